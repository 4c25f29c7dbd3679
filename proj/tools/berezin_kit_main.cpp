#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bkit/cli.hpp"
#include "bkit/io.hpp"

namespace {

// Complex-valued flags arrive as strings and are parsed after CLI11 runs, so
// literals like "0.3+0.4i" keep working inside list flags.
struct RawFlags {
  std::string alpha, beta, xi, mu, hole;
  std::string phi0, phi1, coeffs;
  std::string grid;
};

void add_flags(CLI::App* cmd, bkit::RunConfig& cfg, RawFlags& raw) {
  cmd->add_option("--gamma", cfg.gamma, "integer space weight (1 = Hardy, 2 = Bergman)");
  cmd->add_option("--dim", cfg.dim, "number of polydisk variables");
  cmd->add_option("--alpha", raw.alpha, "Blaschke parameter, complex literal with |alpha| < 1");
  cmd->add_option("--beta", raw.beta, "elliptic parameter, complex literal with |beta| <= 1");
  cmd->add_option("--phi0", raw.phi0, "comma-separated phi_j(0) values");
  cmd->add_option("--phi1", raw.phi1, "comma-separated phi_j'(0) values");
  cmd->add_option("--xi", raw.xi, "unimodular rotation; selects the rotation conjugation");
  cmd->add_option("--mu", raw.mu, "unimodular conjugation factor (default 1)");
  cmd->add_option("--coeffs", raw.coeffs, "comma-separated amplitudes / term coefficients");
  cmd->add_option("--n", cfg.orders, "differentiation orders, one per variable")->delimiter(',');
  cmd->add_option("--N", cfg.section_size, "finite section size");
  cmd->add_option("--grid", raw.grid, "polar grid as R,T (rings, angles)");
  cmd->add_option("--rmax", cfg.rmax, "outer grid radius (< 1)");
  cmd->add_option("--tol", cfg.tol, "pass-threshold override for defect verdicts");
  cmd->add_option("--seed", cfg.seed, "sampling seed");
  cmd->add_option("--out", cfg.out_path, "CSV / JSON output path");
  cmd->add_option("--svg", cfg.svg_path, "SVG scatter output path");
  cmd->add_flag("--json", cfg.json_output, "print a JSON summary instead of text");
  cmd->add_option("--perturb", cfg.perturb,
                  "multiply the leading weight by (1 + eps z) to break the coupling");
  cmd->add_option("--margin", cfg.margin, "finite-section retention margin (default N/3)");
  cmd->add_option("--angles", cfg.angles, "support-sweep / witness-search angle count");
  cmd->add_option("--samples", cfg.samples, "defect sweep sample count");
  cmd->add_option("--radius", cfg.radius, "defect sweep radius");
  cmd->add_option("--hole-center", raw.hole, "report cloud clearance around this value");
  cmd->add_flag("--decay", cfg.decay, "probe normalized-kernel boundary decay (numrange)");
}

void fill_config(const RawFlags& raw, bkit::RunConfig& cfg) {
  if (!raw.alpha.empty()) cfg.alpha = bkit::parse_complex(raw.alpha);
  if (!raw.beta.empty()) cfg.beta = bkit::parse_complex(raw.beta);
  if (!raw.xi.empty()) cfg.xi = bkit::parse_complex(raw.xi);
  if (!raw.mu.empty()) cfg.mu = bkit::parse_complex(raw.mu);
  if (!raw.hole.empty()) cfg.hole_center = bkit::parse_complex(raw.hole);
  if (!raw.phi0.empty()) cfg.phi0 = bkit::parse_complex_list(raw.phi0);
  if (!raw.phi1.empty()) cfg.phi1 = bkit::parse_complex_list(raw.phi1);
  if (!raw.coeffs.empty()) cfg.coeffs = bkit::parse_complex_list(raw.coeffs);
  if (!raw.grid.empty()) {
    auto comma = raw.grid.find(',');
    if (comma == std::string::npos)
      throw bkit::argument_error("--grid expects R,T (e.g. 200,512)");
    try {
      size_t used = 0;
      cfg.grid_r = std::stoi(raw.grid.substr(0, comma), &used);
      if (used != comma) throw bkit::argument_error("--grid: bad ring count");
      std::string rest = raw.grid.substr(comma + 1);
      cfg.grid_theta = std::stoi(rest, &used);
      if (used != rest.size()) throw bkit::argument_error("--grid: bad angle count");
    } catch (const std::logic_error&) {
      throw bkit::argument_error("--grid expects R,T (e.g. 200,512)");
    }
    if (cfg.grid_r < 2 || cfg.grid_theta < 1)
      throw bkit::argument_error("--grid needs at least 2 rings and 1 angle");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification and range geometry for weighted composition-differentiation "
               "operators on weighted disk spaces"};
  app.require_subcommand(1);

  bkit::RunConfig cfg;
  RawFlags raw;
  const char* commands[] = {"cs-check", "sa-check", "berezin", "numrange", "certify-nonconvex",
                            "report"};
  const char* blurbs[] = {
      "certify complex symmetry of a canonical operator family",
      "certify self-adjointness of a canonical operator family",
      "sample a Berezin range cloud to CSV / SVG",
      "sweep the numerical range of a finite section and test containment",
      "produce a convexity / nonconvexity certificate for a range family",
      "run the full certification matrix",
  };
  for (size_t i = 0; i < std::size(commands); ++i)
    add_flags(app.add_subcommand(commands[i], blurbs[i]), cfg, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bkit::kExitUsage;
  }

  try {
    fill_config(raw, cfg);
  } catch (const std::logic_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return bkit::kExitUsage;
  }

  return bkit::run_command(app.get_subcommands().front()->get_name(), cfg);
}
