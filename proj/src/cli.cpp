#include "bkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <utility>

#include <json.hpp>

#include "bkit/berezin.hpp"
#include "bkit/finite_section.hpp"
#include "bkit/io.hpp"
#include "bkit/numrange.hpp"
#include "bkit/operators.hpp"
#include "bkit/report.hpp"
#include "bkit/sampling.hpp"

namespace bkit {
namespace {

using nlohmann::json;

struct io_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json complex_json(Complex v) { return json::array({v.real(), v.imag()}); }

json complex_list_json(const std::vector<Complex>& vs) {
  json out = json::array();
  for (Complex v : vs) out.push_back(complex_json(v));
  return out;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return kExitPass;
    case Verdict::fail:
      return kExitFail;
    default:
      return kExitInconclusive;
  }
}

Thresholds thresholds_for(const RunConfig& config) {
  Thresholds t;
  if (config.tol > 0.0) {
    t.pass_below = config.tol;
    t.fail_above = std::max(t.fail_above, config.tol);
  }
  return t;
}

int section_or(const RunConfig& c, int fallback) {
  return c.section_size > 0 ? c.section_size : fallback;
}
int grid_r_or(const RunConfig& c, int fallback) { return c.grid_r > 0 ? c.grid_r : fallback; }
int grid_theta_or(const RunConfig& c, int fallback) {
  return c.grid_theta > 0 ? c.grid_theta : fallback;
}
double rmax_or(const RunConfig& c, double fallback) { return c.rmax > 0.0 ? c.rmax : fallback; }
int angles_or(const RunConfig& c, int fallback) { return c.angles > 0 ? c.angles : fallback; }

DefectSweep sweep_for(const RunConfig& c) {
  DefectSweep sweep;
  if (c.samples > 0) sweep.samples = c.samples;
  if (c.radius > 0.0) sweep.radius = c.radius;
  sweep.seed = c.seed;
  return sweep;
}

// Broadcasts a per-factor flag list to the space dimension: empty uses the
// default, a single entry repeats, anything else must match exactly.
std::vector<Complex> per_factor(std::vector<Complex> given, int dim, Complex fallback,
                                const char* flag) {
  if (given.empty()) given.assign(static_cast<size_t>(dim), fallback);
  if (given.size() == 1 && dim > 1) given.assign(static_cast<size_t>(dim), given[0]);
  if (static_cast<int>(given.size()) != dim)
    throw argument_error(std::string(flag) + ": expected 1 or dim entries");
  return given;
}

std::vector<Complex> weight_bump(double eps) { return {Complex(1.0, 0.0), Complex(eps, 0.0)}; }

CompDiffOp perturb_op(CompDiffOp op, double eps) {
  if (eps == 0.0) return op;
  auto weights = op.weights;
  weights[0] = weights[0].times_polynomial(weight_bump(eps));
  return CompDiffOp(op.space, op.orders, std::move(weights), op.maps);
}

GeneralizedSumOp perturb_op(GeneralizedSumOp op, double eps) {
  if (eps == 0.0) return op;
  auto terms = op.terms;
  terms[0].weight = terms[0].weight.times_polynomial(weight_bump(eps));
  return GeneralizedSumOp(op.gamma, std::move(terms), op.map);
}

struct BuiltOperator {
  OperatorSpec op;
  ConjugationSpec conj;
  std::string family;
  json params;
};

BuiltOperator build_cs_operator(const RunConfig& c) {
  json params;
  params["gamma"] = c.gamma;
  params["perturb"] = c.perturb;
  if (c.xi) {
    if (c.dim != 1) throw argument_error("--xi selects the rotation conjugation; needs --dim 1");
    Complex phi0 = c.phi0.empty() ? Complex(0.2, 0.0) : c.phi0[0];
    Complex phi1 = c.phi1.empty() ? Complex(0.4, 0.0) : c.phi1[0];
    std::vector<Complex> cs = c.coeffs.empty() ? std::vector<Complex>{Complex(1.0, 0.0)} : c.coeffs;
    params["xi"] = complex_json(*c.xi);
    params["mu"] = complex_json(c.mu);
    params["phi0"] = complex_json(phi0);
    params["phi1"] = complex_json(phi1);
    params["coeffs"] = complex_list_json(cs);
    GeneralizedSumOp op = perturb_op(canonical_cs_symbols_rotation(c.gamma, *c.xi, phi0, phi1, cs),
                                     c.perturb);
    return {std::move(op), RotationConjugation(c.mu, *c.xi), "rotation-symmetry", params};
  }
  SpaceSpec space(c.dim, c.gamma);
  auto phi0 = per_factor(c.phi0, c.dim, Complex(0.2, 0.0), "--phi0");
  auto phi1 = per_factor(c.phi1, c.dim, Complex(0.5, 0.0), "--phi1");
  MultiIndex n = c.orders.empty() ? MultiIndex::zeros(c.dim) : MultiIndex(c.orders);
  Complex amplitude = c.coeffs.empty() ? Complex(1.0, 0.0) : c.coeffs[0];
  params["dim"] = c.dim;
  params["orders"] = n.orders();
  params["phi0"] = complex_list_json(phi0);
  params["phi1"] = complex_list_json(phi1);
  params["amplitude"] = complex_json(amplitude);
  CompDiffOp op = perturb_op(canonical_cs_symbols_j(space, n, phi0, phi1, amplitude), c.perturb);
  return {std::move(op), StandardConjugation{}, "j-symmetry", params};
}

BuiltOperator build_sa_operator(const RunConfig& c) {
  json params;
  params["gamma"] = c.gamma;
  params["perturb"] = c.perturb;
  if (c.dim == 1 && c.orders.empty() && !c.coeffs.empty()) {
    Complex phi0 = c.phi0.empty() ? Complex(0.2, 0.0) : c.phi0[0];
    Complex phi1 = c.phi1.empty() ? Complex(0.5, 0.0) : c.phi1[0];
    params["phi0"] = complex_json(phi0);
    params["phi1"] = complex_json(phi1);
    params["coeffs"] = complex_list_json(c.coeffs);
    GeneralizedSumOp op =
        perturb_op(canonical_hermitian_symbols(c.gamma, phi0, phi1, c.coeffs), c.perturb);
    return {std::move(op), StandardConjugation{}, "hermitian-sum", params};
  }
  SpaceSpec space(c.dim, c.gamma);
  auto phi0 = per_factor(c.phi0, c.dim, Complex(0.2, 0.0), "--phi0");
  auto phi1 = per_factor(c.phi1, c.dim, Complex(0.5, 0.0), "--phi1");
  MultiIndex n = c.orders.empty() ? MultiIndex::zeros(c.dim) : MultiIndex(c.orders);
  Complex amplitude = c.coeffs.empty() ? Complex(1.0, 0.0) : c.coeffs[0];
  params["dim"] = c.dim;
  params["orders"] = n.orders();
  params["phi0"] = complex_list_json(phi0);
  params["phi1"] = complex_list_json(phi1);
  params["amplitude"] = complex_json(amplitude);
  CompDiffOp op = perturb_op(canonical_sa_symbols(space, n, phi0, phi1, amplitude), c.perturb);
  return {std::move(op), StandardConjugation{}, "self-adjoint", params};
}

// The affine disk self-map phi(z) = phi0 + phi1 z used by the berezin /
// numrange composition sources.
LftSymbol affine_map(const RunConfig& c) {
  Complex phi0 = c.phi0.empty() ? Complex(0.0, 0.0) : c.phi0[0];
  Complex phi1 = c.phi1.empty() ? Complex(0.5, 0.0) : c.phi1[0];
  LftSymbol phi(phi0, phi1, Complex(0.0, 0.0));
  double margin = self_map_margin(phi);
  if (margin <= 0.0) throw symbol_rejection(margin);
  return phi;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_failure("cannot open output file: " + path);
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw io_failure("write failed: " + path);
}

void emit_record(const RunConfig& config, const ReportRecord& record) {
  if (!config.out_path.empty()) {
    auto out = open_output(config.out_path);
    out << report_to_json(config.seed, {record}).dump(2) << "\n";
    finish_output(out, config.out_path);
  }
  if (config.json_output) {
    std::cout << to_json(record).dump(2) << "\n";
  } else {
    std::cout << record.theorem << "  defect " << record.defect << "  verdict "
              << to_string(record.verdict) << "\n";
  }
}

// Runs the kernel-side sweep plus (in one variable) the finite-section check,
// and reports the worse of the two defects.
ReportRecord defect_record(const RunConfig& config, BuiltOperator built, bool self_adjoint) {
  Stopwatch clock;
  DefectSweep sweep = sweep_for(config);
  double kernel_defect = self_adjoint ? sa_defect(built.op, sweep)
                                      : cs_defect(built.op, built.conj, sweep);
  double defect = kernel_defect;
  built.params["samples"] = sweep.samples;
  built.params["sweep_radius"] = sweep.radius;
  built.params["kernel_defect"] = kernel_defect;
  if (operator_space(built.op).dim == 1) {
    int size = section_or(config, 96);
    int margin = config.margin >= 0 ? config.margin : size / 3;
    double matrix_defect = self_adjoint ? matrix_sa_defect(built.op, size, margin)
                                        : matrix_cs_defect(built.op, built.conj, size, margin);
    built.params["section_size"] = size;
    built.params["section_margin"] = margin;
    built.params["matrix_defect"] = matrix_defect;
    defect = std::max(defect, matrix_defect);
  }
  ReportRecord record;
  record.theorem = built.family + "-canonical";
  record.params = std::move(built.params);
  record.defect = defect;
  record.verdict = classify_defect(defect, thresholds_for(config));
  record.runtime_ms = clock.ms();
  return record;
}

}  // namespace

int cmd_cs_check(const RunConfig& config) {
  ReportRecord record = defect_record(config, build_cs_operator(config), /*self_adjoint=*/false);
  emit_record(config, record);
  return exit_for(record.verdict);
}

int cmd_sa_check(const RunConfig& config) {
  ReportRecord record = defect_record(config, build_sa_operator(config), /*self_adjoint=*/true);
  emit_record(config, record);
  return exit_for(record.verdict);
}

int cmd_berezin(const RunConfig& config) {
  Stopwatch clock;
  PolarGrid grid{grid_r_or(config, 200), grid_theta_or(config, 512), rmax_or(config, 0.995)};

  std::string source_tag;
  json params;
  params["gamma"] = config.gamma;
  std::optional<BlaschkeParam> alpha;
  auto source = [&]() -> BerezinSourceSpec {
    if (config.alpha) {
      alpha.emplace(*config.alpha);
      source_tag = "blaschke";
      params["alpha"] = complex_json(*config.alpha);
      return *alpha;
    }
    if (config.beta) {
      source_tag = "elliptic";
      params["beta"] = complex_json(*config.beta);
      return EllipticBeta(*config.beta);
    }
    LftSymbol phi = affine_map(config);
    params["phi0"] = complex_json(phi.value_at_zero());
    params["phi1"] = complex_json(phi.derivative_at_zero());
    if (config.section_size > 0) {
      source_tag = "matrix";
      params["section_size"] = config.section_size;
      return operator_matrix(make_composition(SpaceSpec(1, config.gamma), {phi}),
                             config.section_size);
    }
    source_tag = "composition";
    return phi;
  }();

  RangeCloud cloud = sample_berezin_range(config.gamma, source, grid);

  if (!config.out_path.empty()) {
    auto out = open_output(config.out_path);
    write_cloud_csv(out, cloud);
    finish_output(out, config.out_path);
  }
  if (!config.svg_path.empty()) {
    auto out = open_output(config.svg_path);
    SvgWindow window = alpha ? blaschke_window(config.gamma, *alpha) : cloud_window(cloud);
    write_cloud_svg(out, cloud, window);
    finish_output(out, config.svg_path);
  }

  double min_mod = std::numeric_limits<double>::infinity();
  double max_mod = 0.0;
  double re_min = std::numeric_limits<double>::infinity(), re_max = -re_min;
  double im_min = re_min, im_max = -re_min;
  double real_min = re_min, real_max = -re_min;
  int real_count = 0;
  double hole_clearance = re_min;
  for (const BerezinSample& s : cloud.samples) {
    double mod = std::abs(s.value);
    min_mod = std::min(min_mod, mod);
    max_mod = std::max(max_mod, mod);
    re_min = std::min(re_min, s.value.real());
    re_max = std::max(re_max, s.value.real());
    im_min = std::min(im_min, s.value.imag());
    im_max = std::max(im_max, s.value.imag());
    if (std::abs(s.value.imag()) <= 1e-12) {
      real_min = std::min(real_min, s.value.real());
      real_max = std::max(real_max, s.value.real());
      ++real_count;
    }
    if (config.hole_center)
      hole_clearance = std::min(hole_clearance, std::abs(s.value - *config.hole_center));
  }

  json summary;
  summary["command"] = "berezin";
  summary["source"] = source_tag;
  summary["params"] = params;
  summary["grid"] = {{"r", grid.r_count}, {"theta", grid.theta_count}, {"rmax", grid.r_max}};
  summary["count"] = cloud.samples.size();
  summary["min_modulus"] = min_mod;
  summary["max_modulus"] = max_mod;
  summary["re_range"] = json::array({re_min, re_max});
  summary["im_range"] = json::array({im_min, im_max});
  if (real_count > 0)
    summary["real_slice"] = {{"count", real_count}, {"min", real_min}, {"max", real_max}};
  else
    summary["real_slice"] = nullptr;
  if (config.hole_center) {
    summary["hole_center"] = complex_json(*config.hole_center);
    summary["hole_clearance"] = hole_clearance;
  }
  summary["seed"] = config.seed;
  summary["runtime_ms"] = clock.ms();

  if (config.json_output) {
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << "berezin range: source " << source_tag << ", gamma " << config.gamma << ", grid "
              << grid.r_count << "x" << grid.theta_count << " rmax " << grid.r_max << "\n";
    std::cout << "  samples " << cloud.samples.size() << "  min|value| " << min_mod
              << "  re [" << re_min << ", " << re_max << "]  im [" << im_min << ", " << im_max
              << "]\n";
    if (real_count > 0)
      std::cout << "  real slice [" << real_min << ", " << real_max << "] over " << real_count
                << " samples\n";
    if (config.hole_center)
      std::cout << "  hole clearance " << hole_clearance << " around "
                << format_complex(*config.hole_center) << "\n";
  }
  return kExitPass;
}

int cmd_numrange(const RunConfig& config) {
  Stopwatch clock;

  if (config.decay) {
    if (config.gamma != 1)
      throw argument_error("--decay probes normalized-kernel values on the gamma = 1 space");
    LftSymbol phi = affine_map(config);
    std::vector<CompositionTerm> terms{{Weight(), phi}};
    Complex direction = config.xi.value_or(Complex(1.0, 0.0));
    std::vector<double> radii{0.9, 0.99, 0.999, 0.9999};
    std::vector<double> magnitudes = boundary_decay_probe(terms, direction, radii);
    bool decreasing = true;
    for (size_t i = 1; i < magnitudes.size(); ++i)
      decreasing = decreasing && magnitudes[i] < magnitudes[i - 1];
    json out;
    out["command"] = "numrange";
    out["probe"] = "boundary-decay";
    out["direction"] = complex_json(direction);
    out["radii"] = radii;
    out["magnitudes"] = magnitudes;
    out["strictly_decreasing"] = decreasing;
    out["runtime_ms"] = clock.ms();
    if (config.json_output) {
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "boundary decay along " << format_complex(direction) << ":";
      for (size_t i = 0; i < radii.size(); ++i)
        std::cout << "  |lambda(" << radii[i] << ")| = " << magnitudes[i];
      std::cout << "\n  strictly decreasing: " << (decreasing ? "yes" : "no") << "\n";
    }
    return decreasing ? kExitPass : kExitFail;
  }

  bool canonical = config.xi.has_value() || !config.coeffs.empty() || !config.orders.empty();
  BuiltOperator built = canonical
                            ? build_cs_operator(config)
                            : BuiltOperator{make_composition(SpaceSpec(1, config.gamma),
                                                             {affine_map(config)}),
                                            StandardConjugation{}, "composition", json::object()};
  if (operator_space(built.op).dim != 1)
    throw argument_error("numrange sections are one-variable; needs --dim 1");

  int size = section_or(config, 96);
  OperatorMatrix T = operator_matrix(built.op, size);
  int hull_angles = angles_or(config, 256);
  std::vector<Complex> hull = numerical_range_hull(T.entries, hull_angles);
  bool convex = polygon_is_convex(hull);

  PolarGrid grid{grid_r_or(config, 24), grid_theta_or(config, 64), rmax_or(config, 0.6)};
  RangeCloud cloud = sample_berezin_range(config.gamma, BerezinSourceSpec(T), grid);
  double slack = berezin_in_numrange_check(T, cloud);

  if (!config.out_path.empty()) {
    auto out = open_output(config.out_path);
    out << "vertex_re,vertex_im\n";
    for (Complex v : hull) out << fmt17(v.real()) << "," << fmt17(v.imag()) << "\n";
    finish_output(out, config.out_path);
  }
  if (!config.svg_path.empty()) {
    auto out = open_output(config.svg_path);
    RangeCloud hull_cloud;  // reuse the scatter writer: hull vertices as samples
    hull_cloud.grid = grid;
    for (Complex v : hull) hull_cloud.samples.push_back({Complex(0.0, 0.0), v});
    for (const BerezinSample& s : cloud.samples) hull_cloud.samples.push_back(s);
    write_cloud_svg(out, hull_cloud, cloud_window(hull_cloud));
    finish_output(out, config.svg_path);
  }

  double numerical_radius = 0.0;
  for (Complex v : hull) numerical_radius = std::max(numerical_radius, std::abs(v));

  Thresholds thresholds = thresholds_for(config);
  double defect = std::max(slack, 0.0);
  if (!convex) defect = std::max(defect, 1.0);
  Verdict verdict = classify_defect(defect, thresholds);

  json out;
  out["command"] = "numrange";
  out["family"] = built.family;
  out["params"] = built.params;
  out["section_size"] = size;
  out["angles"] = hull_angles;
  out["convex"] = convex;
  out["numerical_radius"] = numerical_radius;
  out["containment_slack"] = slack;
  out["cloud_count"] = cloud.samples.size();
  out["verdict"] = to_string(verdict);
  out["runtime_ms"] = clock.ms();
  if (config.json_output) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "numerical range: family " << built.family << ", N " << size << ", angles "
              << hull_angles << "\n";
    std::cout << "  convex polygon: " << (convex ? "yes" : "no") << "  numerical radius "
              << numerical_radius << "\n";
    std::cout << "  berezin containment slack " << slack << " over " << cloud.samples.size()
              << " samples  verdict " << to_string(verdict) << "\n";
  }
  return exit_for(verdict);
}

int cmd_certify_nonconvex(const RunConfig& config) {
  Stopwatch clock;

  if (config.beta) {
    EllipticBeta beta(*config.beta);
    PolarGrid grid{grid_r_or(config, 100), grid_theta_or(config, 256), rmax_or(config, 0.995)};
    ConvexityVerdict verdict = elliptic_convexity_verdict(config.gamma, beta, grid);
    json out;
    out["command"] = "certify-nonconvex";
    out["family"] = "elliptic";
    out["beta"] = complex_json(*config.beta);
    out["gamma"] = config.gamma;
    out["convex"] = verdict.convex;
    if (verdict.convex) {
      out["real_segment"] = json::array({verdict.real_min, verdict.real_max});
    } else {
      out["sample_a"] = complex_json(verdict.sample_a);
      out["sample_b"] = complex_json(verdict.sample_b);
      out["midpoint"] = complex_json(verdict.midpoint);
      out["midpoint_distance"] = verdict.midpoint_distance;
      out["resolution"] = verdict.resolution;
    }
    out["runtime_ms"] = clock.ms();
    if (!config.out_path.empty()) {
      auto file = open_output(config.out_path);
      file << out.dump(2) << "\n";
      finish_output(file, config.out_path);
    }
    if (config.json_output) {
      std::cout << out.dump(2) << "\n";
    } else if (verdict.convex) {
      std::cout << "elliptic range is a real segment [" << verdict.real_min << ", "
                << verdict.real_max << "]: convex\n";
    } else {
      std::cout << "elliptic range is nonconvex: midpoint "
                << format_complex(verdict.midpoint) << " sits " << verdict.midpoint_distance
                << " away from the curve (resolution " << verdict.resolution << ")\n";
    }
    return kExitPass;
  }

  if (!config.alpha) throw argument_error("certify-nonconvex needs --alpha or --beta");
  BlaschkeParam alpha(*config.alpha);

  if (std::abs(alpha.value()) == 0.0) {
    PolarGrid grid{grid_r_or(config, 50), grid_theta_or(config, 64), rmax_or(config, 0.995)};
    RangeCloud cloud = sample_berezin_range(config.gamma, alpha, grid);
    double deviation = 0.0;
    for (const BerezinSample& s : cloud.samples)
      deviation = std::max(deviation, std::abs(s.value - Complex(1.0, 0.0)));
    bool collapsed = deviation < 1e-14;
    json out;
    out["command"] = "certify-nonconvex";
    out["family"] = "blaschke";
    out["alpha"] = complex_json(alpha.value());
    out["gamma"] = config.gamma;
    out["convex"] = true;
    out["range"] = "{1}";
    out["max_deviation"] = deviation;
    out["runtime_ms"] = clock.ms();
    if (!config.out_path.empty()) {
      auto file = open_output(config.out_path);
      file << out.dump(2) << "\n";
      finish_output(file, config.out_path);
    }
    if (config.json_output)
      std::cout << out.dump(2) << "\n";
    else
      std::cout << "alpha = 0: range collapses to {1} (max deviation " << deviation
                << "), trivially convex\n";
    return collapsed ? kExitPass : kExitFail;
  }

  NonconvexSearchGrid search;
  search.theta_count = angles_or(config, 256);
  NonconvexityWitness witness = nonconvexity_certificate(config.gamma, alpha, search);

  // Spot-check the real-slice law the witness is compared against.
  double slice_residual = 0.0;
  for (int i = -9; i <= 9; ++i) {
    double r = 0.1 * i;
    if (std::abs(r) * std::abs(alpha.value()) >= 1.0) continue;
    Complex w = r * alpha.value();
    if (std::abs(w) > kMaxDiskModulus) continue;
    double law = real_slice_value(config.gamma, alpha, r);
    Complex sampled = berezin_blaschke(config.gamma, alpha, DiskPoint(w));
    slice_residual = std::max(slice_residual, std::abs(sampled - Complex(law, 0.0)));
  }

  json out;
  out["command"] = "certify-nonconvex";
  out["family"] = "blaschke";
  out["alpha"] = complex_json(alpha.value());
  out["gamma"] = config.gamma;
  out["convex"] = false;
  out["witness_z"] = complex_json(witness.z);
  out["value"] = complex_json(witness.value);
  out["conj_partner"] = complex_json(witness.conj_partner);
  out["midpoint"] = witness.midpoint;
  out["real_slice_inf"] = witness.real_slice_inf;
  out["gap"] = witness.gap;
  out["slice_residual"] = slice_residual;
  out["runtime_ms"] = clock.ms();
  if (!config.out_path.empty()) {
    auto file = open_output(config.out_path);
    file << out.dump(2) << "\n";
    finish_output(file, config.out_path);
  }
  if (config.json_output) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "nonconvexity witness at z = " << format_complex(witness.z) << ": value "
              << format_complex(witness.value) << "\n";
    std::cout << "  midpoint of the conjugate pair " << witness.midpoint
              << " undercuts the real slice infimum " << witness.real_slice_inf << " by "
              << witness.gap << "\n";
    std::cout << "  real-slice law residual " << slice_residual << "\n";
  }
  return witness.gap > 0.0 ? kExitPass : kExitFail;
}

namespace {

// One certification cell: runs fn, captures defect + params, folds any
// exception into a failing record so the aggregate report stays complete.
template <typename Fn>
ReportRecord run_cell(const std::string& tag, json params, const Thresholds& thresholds, Fn&& fn) {
  Stopwatch clock;
  ReportRecord record;
  record.theorem = tag;
  record.params = std::move(params);
  try {
    record.defect = fn(record.params);
    record.verdict = classify_defect(record.defect, thresholds);
  } catch (const std::exception& e) {
    record.params["error"] = e.what();
    record.defect = std::numeric_limits<double>::infinity();
    record.verdict = Verdict::fail;
  }
  record.runtime_ms = clock.ms();
  return record;
}

json cell_params(std::initializer_list<std::pair<const char*, json>> kv) {
  json out;
  for (const auto& [k, v] : kv) out[k] = v;
  return out;
}

}  // namespace

int cmd_report(const RunConfig& config) {
  Stopwatch clock;
  std::vector<ReportRecord> records;
  const double eps = config.perturb;
  const Thresholds defect_band;  // default pass < 1e-9, fail > 1e-4

  DefectSweep sweep;
  sweep.seed = config.seed;

  // --- complex symmetry under the coefficient-conjugation J
  struct JCell {
    int gamma, dim;
    std::vector<int> orders;
    std::vector<Complex> phi0, phi1;
    Complex amplitude;
  };
  const std::vector<JCell> j_cells = {
      {1, 1, {0}, {{0.2, 0.0}}, {{0.5, 0.0}}, {1.0, 0.0}},
      {2, 1, {1}, {{0.1, 0.1}}, {{0.4, 0.0}}, {0.8, 0.0}},
      {2, 2, {1, 0}, {{0.1, 0.0}, {0.15, 0.1}}, {{0.3, 0.0}, {0.0, 0.4}}, {0.0, 1.5}},
      {3, 1, {2}, {{0.1, 0.0}}, {{0.3, 0.0}}, {1.0, 0.0}},
      {1, 3, {0, 1, 0}, {{0.1, 0.0}, {0.2, 0.0}, {0.0, 0.05}}, {{0.5, 0.0}, {0.3, 0.0}, {0.2, 0.0}}, {0.7, 0.0}},
  };
  for (const JCell& cell : j_cells) {
    json params = cell_params({{"gamma", cell.gamma},
                               {"dim", cell.dim},
                               {"orders", cell.orders},
                               {"phi0", complex_list_json(cell.phi0)},
                               {"phi1", complex_list_json(cell.phi1)},
                               {"amplitude", complex_json(cell.amplitude)},
                               {"perturb", eps}});
    records.push_back(run_cell("j-symmetry-canonical", std::move(params), defect_band,
                               [&](json& p) {
                                 SpaceSpec space(cell.dim, cell.gamma);
                                 CompDiffOp op = perturb_op(
                                     canonical_cs_symbols_j(space, MultiIndex(cell.orders),
                                                            cell.phi0, cell.phi1, cell.amplitude),
                                     eps);
                                 double defect = cs_defect(op, StandardConjugation{}, sweep);
                                 p["kernel_defect"] = defect;
                                 if (cell.dim == 1) {
                                   double md =
                                       matrix_cs_defect(op, StandardConjugation{}, 96, 32);
                                   p["matrix_defect"] = md;
                                   defect = std::max(defect, md);
                                 }
                                 return defect;
                               }));
  }

  // --- self-adjointness of the differentiation-composition family
  struct SaCell {
    int gamma, dim;
    std::vector<int> orders;
    std::vector<Complex> phi0, phi1;
    Complex amplitude;
  };
  const std::vector<SaCell> sa_cells = {
      {1, 1, {0}, {{0.2, 0.0}}, {{0.5, 0.0}}, {1.0, 0.0}},
      {2, 1, {1}, {{0.1, 0.2}}, {{0.4, 0.0}}, {0.8, 0.0}},
      {2, 2, {0, 1}, {{0.1, 0.0}, {0.0, 0.2}}, {{0.5, 0.0}, {0.3, 0.0}}, {1.2, 0.0}},
      {3, 2, {1, 1}, {{0.15, 0.0}, {0.1, 0.0}}, {{0.25, 0.0}, {0.3, 0.0}}, {0.6, 0.0}},
  };
  for (const SaCell& cell : sa_cells) {
    json params = cell_params({{"gamma", cell.gamma},
                               {"dim", cell.dim},
                               {"orders", cell.orders},
                               {"phi0", complex_list_json(cell.phi0)},
                               {"phi1", complex_list_json(cell.phi1)},
                               {"amplitude", complex_json(cell.amplitude)},
                               {"perturb", eps}});
    records.push_back(run_cell("self-adjoint-canonical", std::move(params), defect_band,
                               [&](json& p) {
                                 SpaceSpec space(cell.dim, cell.gamma);
                                 CompDiffOp op = perturb_op(
                                     canonical_sa_symbols(space, MultiIndex(cell.orders),
                                                          cell.phi0, cell.phi1, cell.amplitude),
                                     eps);
                                 double defect = sa_defect(op, sweep);
                                 p["kernel_defect"] = defect;
                                 if (cell.dim == 1) {
                                   double md = matrix_sa_defect(op, 96, 32);
                                   p["matrix_defect"] = md;
                                   defect = std::max(defect, md);
                                 }
                                 return defect;
                               }));
  }

  // --- rotation-conjugation symmetry of generalized derivative sums
  struct RotCell {
    int gamma;
    Complex xi, mu, phi0, phi1;
    std::vector<Complex> c, a;
  };
  const std::vector<RotCell> rot_cells = {
      {1, {0.0, 1.0}, {1.0, 0.0}, {0.2, 0.0}, {0.4, 0.0}, {{0.8, 0.0}, {0.0, 0.3}}, {{1.0, 0.0}, {0.5, 0.0}}},
      {2, std::polar(1.0, kPi / 3.0), std::polar(1.0, 0.7), {0.1, 0.1}, {0.35, 0.0}, {{0.5, 0.0}}, {}},
      {3, {-1.0, 0.0}, {1.0, 0.0}, {0.0, 0.15}, {0.3, 0.0}, {{0.4, 0.0}, {0.2, 0.0}, {0.0, 0.1}}, {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}},
  };
  for (const RotCell& cell : rot_cells) {
    json params = cell_params({{"gamma", cell.gamma},
                               {"xi", complex_json(cell.xi)},
                               {"mu", complex_json(cell.mu)},
                               {"phi0", complex_json(cell.phi0)},
                               {"phi1", complex_json(cell.phi1)},
                               {"coeffs", complex_list_json(cell.c)},
                               {"perturb", eps}});
    records.push_back(run_cell("rotation-symmetry-canonical", std::move(params), defect_band,
                               [&](json& p) {
                                 GeneralizedSumOp op = perturb_op(
                                     canonical_cs_symbols_rotation(cell.gamma, cell.xi, cell.phi0,
                                                                   cell.phi1, cell.c, cell.a),
                                     eps);
                                 RotationConjugation conj(cell.mu, cell.xi);
                                 double defect = cs_defect(op, conj, sweep);
                                 p["kernel_defect"] = defect;
                                 double md = matrix_cs_defect(op, conj, 96, 32);
                                 p["matrix_defect"] = md;
                                 return std::max(defect, md);
                               }));
  }

  // --- hermitian generalized derivative sums
  struct HermCell {
    int gamma;
    Complex phi0, phi1;
    std::vector<Complex> c, a;
  };
  const std::vector<HermCell> herm_cells = {
      {1, {0.2, 0.0}, {0.5, 0.0}, {{0.8, 0.0}, {-0.3, 0.0}}, {{1.0, 0.0}, {0.7, 0.0}}},
      {2, {0.1, 0.2}, {0.4, 0.0}, {{0.6, 0.0}}, {}},
      {3, {0.25, 0.0}, {0.3, 0.0}, {{0.5, 0.0}, {0.2, 0.0}}, {{1.0, 0.0}, {0.4, 0.0}}},
  };
  for (const HermCell& cell : herm_cells) {
    json params = cell_params({{"gamma", cell.gamma},
                               {"phi0", complex_json(cell.phi0)},
                               {"phi1", complex_json(cell.phi1)},
                               {"coeffs", complex_list_json(cell.c)},
                               {"perturb", eps}});
    records.push_back(run_cell("hermitian-sum-canonical", std::move(params), defect_band,
                               [&](json& p) {
                                 GeneralizedSumOp op = perturb_op(
                                     canonical_hermitian_symbols(cell.gamma, cell.phi0, cell.phi1,
                                                                 cell.c, cell.a),
                                     eps);
                                 double defect = sa_defect(op, sweep);
                                 p["kernel_defect"] = defect;
                                 double md = matrix_sa_defect(op, 96, 32);
                                 p["matrix_defect"] = md;
                                 return std::max(defect, md);
                               }));
  }

  // --- boundary decay of the two-term composition sum fixture
  records.push_back(run_cell(
      "boundary-decay", cell_params({{"radii", json::array({0.9, 0.99, 0.999, 0.9999})}}),
      Thresholds{0.01, 0.011}, [&](json& p) {
        std::vector<CompositionTerm> terms;
        terms.push_back({Weight(), LftSymbol({0.0, 0.0}, {0.5, 0.0}, {0.0, 0.0})});
        terms.push_back({Weight::polynomial({{0.0, 0.0}, {1.0, 0.0}}),
                         LftSymbol({0.0, 0.0}, {1.0 / 3.0, 0.0}, {0.0, 0.0})});
        std::vector<double> radii{0.9, 0.99, 0.999, 0.9999};
        std::vector<double> mags = boundary_decay_probe(terms, Complex(1.0, 0.0), radii);
        p["magnitudes"] = mags;
        bool decreasing = true;
        for (size_t i = 1; i < mags.size(); ++i) decreasing = decreasing && mags[i] < mags[i - 1];
        p["strictly_decreasing"] = decreasing;
        return decreasing ? mags.back() : 1.0;
      }));

  // --- elliptic ranges: real parameters give real segments
  for (double beta : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    records.push_back(run_cell(
        "elliptic-reality", cell_params({{"beta", beta}, {"gamma", config.gamma}}),
        Thresholds{1e-13, 1e-4}, [&, beta](json& p) {
          PolarGrid grid{40, 64, 0.99};
          RangeCloud cloud =
              sample_berezin_range(config.gamma, EllipticBeta(Complex(beta, 0.0)), grid);
          double defect = 0.0;
          double lo = std::numeric_limits<double>::infinity(), hi = -lo;
          for (int i = 0; i < grid.r_count; ++i) {
            Complex first = cloud.samples[static_cast<size_t>(i) * grid.theta_count].value;
            for (int j = 0; j < grid.theta_count; ++j) {
              Complex v = cloud.samples[static_cast<size_t>(i) * grid.theta_count + j].value;
              defect = std::max(defect, std::abs(v.imag()));
              defect = std::max(defect, std::abs(v - first));
              lo = std::min(lo, v.real());
              hi = std::max(hi, v.real());
            }
          }
          p["real_range"] = json::array({lo, hi});
          if (!(lo > 0.0 && hi <= 1.0 + 1e-12)) return 1.0;
          return defect;
        }));
  }
  records.push_back(run_cell(
      "elliptic-nonconvex-pair", cell_params({{"beta", complex_json({0.0, 1.0})}, {"gamma", config.gamma}}),
      Thresholds{0.5, 0.5}, [&](json& p) {
        PolarGrid grid{100, 256, 0.995};
        ConvexityVerdict verdict =
            elliptic_convexity_verdict(config.gamma, EllipticBeta(Complex(0.0, 1.0)), grid);
        p["convex"] = verdict.convex;
        if (!verdict.convex) {
          p["midpoint"] = complex_json(verdict.midpoint);
          p["midpoint_distance"] = verdict.midpoint_distance;
          p["resolution"] = verdict.resolution;
        }
        return verdict.convex ? 1.0 : 0.0;
      }));

  // --- conjugate-symmetry witness residuals
  records.push_back(run_cell(
      "symmetry-witness", cell_params({{"triples", 200}}), Thresholds{1e-11, 1e-4},
      [&](json& p) {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
          int gamma = 1 + (k % 3);
          Complex a = disk_sample(config.seed, static_cast<std::uint64_t>(k), 10, 0.95);
          Complex w = disk_sample(config.seed, static_cast<std::uint64_t>(k), 11, 0.95);
          SymmetryWitness witness = symmetry_witness(gamma, BlaschkeParam(a), DiskPoint(w));
          worst = std::max(worst, witness.residual);
        }
        p["max_residual"] = worst;
        return worst;
      }));

  // --- mirror identity across the origin
  for (Complex a : {Complex(0.1, 0.0), Complex(0.3, 0.4), Complex(0.0, 0.6)}) {
    records.push_back(run_cell(
        "mirror-identity", cell_params({{"alpha", complex_json(a)}, {"points", 2500}}),
        Thresholds{1e-13, 1e-4}, [&, a](json& p) {
          double worst = 0.0;
          for (int i = 0; i < 50; ++i) {
            double r = 0.99 * (i + 1) / 50.0;
            for (int j = 0; j < 50; ++j) {
              Complex w = std::polar(r, 2.0 * kPi * j / 50.0);
              worst = std::max(worst,
                               mirror_identity_defect(config.gamma, BlaschkeParam(a), DiskPoint(w)));
            }
          }
          p["max_defect"] = worst;
          return worst;
        }));
  }

  // --- nonconvexity certificates and the collapse at alpha = 0
  for (double a : {0.1, 0.5, 0.7}) {
    for (int gamma : {1, 2, 3}) {
      records.push_back(run_cell(
          "nonconvexity-certificate",
          cell_params({{"alpha", a}, {"gamma", gamma}}), Thresholds{0.5, 0.5},
          [a, gamma](json& p) {
            NonconvexityWitness witness =
                nonconvexity_certificate(gamma, BlaschkeParam(Complex(a, 0.0)));
            p["gap"] = witness.gap;
            p["witness_z"] = complex_json(witness.z);
            return witness.gap > 0.0 ? 0.0 : 1.0;
          }));
    }
  }
  records.push_back(run_cell(
      "range-collapse-at-zero", cell_params({{"alpha", 0.0}, {"gamma", config.gamma}}),
      Thresholds{1e-14, 1e-4}, [&](json& p) {
        PolarGrid grid{50, 64, 0.995};
        RangeCloud cloud =
            sample_berezin_range(config.gamma, BlaschkeParam(Complex(0.0, 0.0)), grid);
        double deviation = 0.0;
        for (const BerezinSample& s : cloud.samples)
          deviation = std::max(deviation, std::abs(s.value - Complex(1.0, 0.0)));
        p["max_deviation"] = deviation;
        return deviation;
      }));
  records.push_back(run_cell(
      "real-slice-law", cell_params({{"r_steps", 19}}), Thresholds{1e-12, 1e-4}, [](json& p) {
        double worst = 0.0;
        for (Complex a : {Complex(0.3, 0.0), Complex(0.0, 0.5), Complex(0.2, 0.4)}) {
          for (int gamma : {1, 2, 3}) {
            for (int i = -9; i <= 9; ++i) {
              double r = 0.1 * i;
              Complex w = r * a;
              if (std::abs(w) > 0.995) continue;
              double law = real_slice_value(gamma, BlaschkeParam(a), r);
              Complex sampled = berezin_blaschke(gamma, BlaschkeParam(a), DiskPoint(w));
              worst = std::max(worst, std::abs(sampled - Complex(law, 0.0)));
            }
          }
        }
        p["max_residual"] = worst;
        return worst;
      }));

  // --- Berezin values sit inside the numerical range
  records.push_back(run_cell(
      "berezin-in-numerical-range", cell_params({{"fixtures", json::array({"diagonal", "jordan", "composition"})}}),
      Thresholds{1e-9, 1e-4}, [](json& p) {
        double worst = 0.0;
        bool all_convex = true;
        auto check = [&](const OperatorMatrix& T, int gamma, const PolarGrid& grid) {
          RangeCloud cloud = sample_berezin_range(gamma, BerezinSourceSpec(T), grid);
          worst = std::max(worst, std::max(0.0, berezin_in_numrange_check(T, cloud)));
          all_convex =
              all_convex && polygon_is_convex(numerical_range_hull(T.entries, 256));
        };
        Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(24, 24);
        for (int k = 0; k < 24; ++k) diag(k, k) = std::pow(0.9, k);
        check(OperatorMatrix(diag, SpaceSpec(1, 1)), 1, PolarGrid{24, 48, 0.6});
        Eigen::MatrixXcd jordan = Eigen::MatrixXcd::Zero(16, 16);
        for (int k = 0; k < 16; ++k) {
          jordan(k, k) = 0.5;
          if (k + 1 < 16) jordan(k, k + 1) = 1.0;
        }
        check(OperatorMatrix(jordan, SpaceSpec(1, 1)), 1, PolarGrid{20, 40, 0.5});
        OperatorMatrix comp = operator_matrix(
            make_composition(SpaceSpec(1, 2), {LftSymbol({0.3, 0.0}, {0.4, 0.0}, {0.0, 0.0})}),
            64);
        check(comp, 2, PolarGrid{24, 48, 0.7});
        p["max_slack"] = worst;
        p["hulls_convex"] = all_convex;
        return all_convex ? worst : 1.0;
      }));

  json full = report_to_json(config.seed, records);
  full["runtime_ms"] = clock.ms();

  if (!config.out_path.empty()) {
    auto out = open_output(config.out_path);
    out << full.dump(2) << "\n";
    finish_output(out, config.out_path);
  }
  bool all_pass = true;
  for (const ReportRecord& r : records) all_pass = all_pass && r.verdict == Verdict::pass;
  if (config.json_output) {
    std::cout << full.dump(2) << "\n";
  } else {
    for (const ReportRecord& r : records)
      std::cout << r.theorem << "  defect " << r.defect << "  verdict " << to_string(r.verdict)
                << "\n";
    std::cout << "overall: " << (all_pass ? "pass" : "fail") << " (" << records.size()
              << " cells)\n";
  }
  return all_pass ? kExitPass : kExitFail;
}

int run_command(const std::string& command, const RunConfig& config) {
  try {
    if (command == "cs-check") return cmd_cs_check(config);
    if (command == "sa-check") return cmd_sa_check(config);
    if (command == "berezin") return cmd_berezin(config);
    if (command == "numrange") return cmd_numrange(config);
    if (command == "certify-nonconvex") return cmd_certify_nonconvex(config);
    if (command == "report") return cmd_report(config);
    std::cerr << "unknown command: " << command << "\n";
    return kExitUsage;
  } catch (const io_failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const symbol_rejection& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const argument_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const unsupported_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const precision_error& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const search_error& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconclusive;
  }
}

}  // namespace bkit
