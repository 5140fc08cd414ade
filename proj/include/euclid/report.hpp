#ifndef EUCLID_REPORT_HPP
#define EUCLID_REPORT_HPP

#include <complex>
#include <fstream>
#include <string>

#include <json.hpp>

namespace euclid {

using Json = nlohmann::ordered_json;

// Floating-point report values carry 15 significant digits; numbers are
// rounded through a %.15g print so identical runs serialize identically.
double round15(double x);
Json j15(double x);
Json j15(std::complex<double> z);  // [re, im]

std::string format15(double x);

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const Json& j);

}  // namespace euclid

#endif  // EUCLID_REPORT_HPP
