#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bkit/types.hpp"

namespace bkit {

// Exit code contract shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

// Parsed command line. Zero-valued grid / section fields mean "not given";
// each command fills in its own defaults so figure sampling and matrix checks
// can differ.
struct RunConfig {
  int gamma = 1;
  int dim = 1;

  std::optional<Complex> alpha;  // Blaschke parameter
  std::optional<Complex> beta;   // elliptic parameter
  std::vector<Complex> phi0;     // per-factor phi_j(0)
  std::vector<Complex> phi1;     // per-factor phi_j'(0)
  std::optional<Complex> xi;     // rotation conjugation; selects C_{mu,xi}
  Complex mu{1.0, 0.0};
  std::vector<Complex> coeffs;   // amplitude / c-list / a-list head
  std::vector<int> orders;       // differentiation multi-index

  int section_size = 0;  // --N
  int grid_r = 0;        // --grid R,T
  int grid_theta = 0;
  double rmax = 0.0;

  double tol = 0.0;  // pass threshold override; 0 keeps the default band
  std::uint64_t seed = 12345;

  std::string out_path;
  std::string svg_path;
  bool json_output = false;

  // extras beyond the shared flag set
  double perturb = 0.0;  // weight *= (1 + perturb z): breaks the couplings
  int margin = -1;       // matrix retention margin; -1 = size / 3
  int angles = 0;        // support sweep resolution
  int samples = 0;       // defect sweep sample count
  double radius = 0.0;   // defect sweep radius
  std::optional<Complex> hole_center;
  bool decay = false;  // boundary decay probe (numrange)
};

int cmd_cs_check(const RunConfig& config);
int cmd_sa_check(const RunConfig& config);
int cmd_berezin(const RunConfig& config);
int cmd_numrange(const RunConfig& config);
int cmd_certify_nonconvex(const RunConfig& config);
int cmd_report(const RunConfig& config);

// Dispatches to the cmd_* handler and maps the error taxonomy onto the exit
// code contract (usage 64, I/O 74, inconclusive 2).
int run_command(const std::string& command, const RunConfig& config);

}  // namespace bkit
