#include "bkit/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace bkit {

// 17 significant digits round-trips doubles exactly and keeps output
// byte-stable across runs.
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_cloud_csv(std::ostream& out, const RangeCloud& cloud) {
  out << "w_re,w_im,ber_re,ber_im\n";
  for (const BerezinSample& s : cloud.samples) {
    out << fmt17(s.w.real()) << ',' << fmt17(s.w.imag()) << ',' << fmt17(s.value.real()) << ','
        << fmt17(s.value.imag()) << '\n';
  }
}

SvgWindow blaschke_window(int gamma, const BlaschkeParam& alpha) {
  double top = std::pow(1.0 + std::abs(alpha.value()), gamma);
  return {-0.1, top + 0.1};
}

SvgWindow cloud_window(const RangeCloud& cloud) {
  double re_min = 0.0, re_max = 1.0;
  bool first = true;
  for (const BerezinSample& s : cloud.samples) {
    if (first) {
      re_min = re_max = s.value.real();
      first = false;
    } else {
      re_min = std::min(re_min, s.value.real());
      re_max = std::max(re_max, s.value.real());
    }
  }
  return {re_min - 0.1, re_max + 0.1};
}

void write_cloud_svg(std::ostream& out, const RangeCloud& cloud, const SvgWindow& window) {
  const double span = window.re_max - window.re_min;
  const double im_half = 0.5 * span;
  const double scale = 1000.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" "
         "width=\"1000\" height=\"1000\">\n";
  out << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  char buf[160];
  for (const BerezinSample& s : cloud.samples) {
    double x = (s.value.real() - window.re_min) / span * scale;
    double y = (im_half - s.value.imag()) / span * scale;  // flip: +Im is up
    if (x < 0.0 || x > scale || y < 0.0 || y > scale) continue;
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.2\" fill=\"#1f6fb4\" fill-opacity=\"0.5\"/>\n",
                  x, y);
    out << buf;
  }
  out << "</svg>\n";
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw argument_error("parse_complex: empty literal");

  // Split at the sign that separates real and imaginary parts (skip a leading
  // sign and signs inside exponents).
  size_t split = std::string::npos;
  for (size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  }

  auto parse_part = [](const std::string& part, bool imag_unit) -> double {
    std::string body = part;
    if (imag_unit) {
      if (body.empty() || (body.back() != 'i' && body.back() != 'I'))
        throw argument_error("parse_complex: expected imaginary part to end in i");
      body.pop_back();
      if (body.empty() || body == "+") return 1.0;
      if (body == "-") return -1.0;
    }
    size_t used = 0;
    double v = std::stod(body, &used);
    if (used != body.size()) throw argument_error("parse_complex: trailing characters in '" + part + "'");
    return v;
  };

  bool ends_i = s.back() == 'i' || s.back() == 'I';
  if (split == std::string::npos) {
    if (ends_i) return Complex(0.0, parse_part(s, true));
    return Complex(parse_part(s, false), 0.0);
  }
  if (!ends_i) throw argument_error("parse_complex: two parts but no imaginary unit in '" + text + "'");
  return Complex(parse_part(s.substr(0, split), false), parse_part(s.substr(split), true));
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  if (out.empty()) throw argument_error("parse_complex_list: empty list");
  return out;
}

std::string format_complex(Complex v) {
  std::string out = fmt17(v.real());
  if (v.imag() != 0.0) {
    out += (v.imag() < 0.0 ? "-" : "+");
    out += fmt17(std::abs(v.imag()));
    out += "i";
  }
  return out;
}

}  // namespace bkit
