#include "qcverify/scalar.hpp"

#include <charconv>
#include <cstdio>

namespace qcv {

std::string Scalar::str() const {
  if (exact_) return q_.get_str();
  return double_str(f_);
}

std::string double_str(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace qcv
