#include "euclid/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace euclid {

std::string format15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

double round15(double x) { return std::strtod(format15(x).c_str(), nullptr); }

Json j15(double x) { return Json(round15(x)); }

Json j15(std::complex<double> z) { return Json::array({round15(z.real()), round15(z.imag())}); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace euclid
