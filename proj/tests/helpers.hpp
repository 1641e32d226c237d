#pragma once

#include <vector>

#include "oracles.hpp"
#include "tropk/tropk.hpp"

namespace testing {

inline oracle::Vec values(const tropk::TropVector& v) {
  oracle::Vec out;
  for (const auto& e : v.entries()) out.push_back(e.value());
  return out;
}

inline oracle::Mat values(const tropk::KernelMatrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t x = 0; x < m.rows(); ++x)
    for (std::size_t y = 0; y < m.cols(); ++y) out[x][y] = m(x, y).value();
  return out;
}

inline std::vector<oracle::Vec> values(const std::vector<tropk::TropVector>& vs) {
  std::vector<oracle::Vec> out;
  for (const auto& v : vs) out.push_back(values(v));
  return out;
}

inline tropk::TropVector vec(const tropk::GroundSet& g, const oracle::Vec& v) {
  return tropk::TropVector::from_values(g, std::span<const double>(v.data(), v.size()));
}

inline tropk::KernelMatrix mat(const tropk::GroundSet& dom, const tropk::GroundSet& cod, const oracle::Mat& m) {
  std::vector<tropk::Scalar> e;
  for (const auto& r : m)
    for (double v : r) e.emplace_back(v);
  return tropk::KernelMatrix(dom, cod, std::move(e));
}

inline constexpr double Z = oracle::kNegInf;
inline constexpr double T = oracle::kPosInf;

}  // namespace testing
