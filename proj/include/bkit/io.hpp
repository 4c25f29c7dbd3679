#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "bkit/berezin.hpp"

namespace bkit {

// 17-significant-digit decimal rendering; round-trips doubles exactly.
std::string fmt17(double v);

// Cloud CSV: header exactly "w_re,w_im,ber_re,ber_im", one row per grid node,
// 17 significant digits. Identical clouds serialize byte-identically.
void write_cloud_csv(std::ostream& out, const RangeCloud& cloud);

// Static SVG scatter in a unit-square viewport. The window spans
// [re_min, re_max] x a symmetric imaginary interval of the same width.
struct SvgWindow {
  double re_min;
  double re_max;
};

// Window for a Blaschke figure: [-0.1, (1+|alpha|)^gamma + 0.1].
SvgWindow blaschke_window(int gamma, const BlaschkeParam& alpha);
// Fallback window covering the sampled values.
SvgWindow cloud_window(const RangeCloud& cloud);

void write_cloud_svg(std::ostream& out, const RangeCloud& cloud, const SvgWindow& window);

// Complex literal parsing for CLI flags: "0.5", "-0.3+0.4i", "0.6i", "i".
Complex parse_complex(const std::string& text);
std::vector<Complex> parse_complex_list(const std::string& text);

std::string format_complex(Complex v);

}  // namespace bkit
