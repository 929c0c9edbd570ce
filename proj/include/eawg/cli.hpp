#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eawg/center.hpp"
#include "eawg/collections.hpp"
#include "eawg/json_io.hpp"
#include "eawg/rootsystem.hpp"
#include "eawg/weylgroup.hpp"

namespace eawg {

inline constexpr std::string_view kVersion = "1.0.0";

/// Exit codes of the command line tool.
enum class ExitCode : int { Ok = 0, Input = 1, Internal = 2, NoPbc = 3 };

/// Outcome of the three decision paths for one spec.
struct RunReport {
  explicit RunReport(EarsSpec s) : spec(std::move(s)) {}

  std::string source;
  EarsSpec spec;
  DecisionReport decision;
  CenterStructure center;
  bool fg_pbc = true;
  ScreenResult screen;
  std::optional<int> closed_n0;
  /// Disagreements between paths or with the structure theorems; empty when consistent.
  std::vector<std::string> breaches;
  double wall_seconds = 0.0;

  ExitCode exit_code() const;
};

RunReport run_check(const EarsSpec &spec, std::size_t max_witnesses = kDefaultMaxWitnesses);
Json to_json(const RunReport &report);

struct ClassifyRow {
  Semilattice s1;
  Semilattice s2;
  std::uint64_t inc = 1;
  int n0 = 0;
  bool pbc = true;
  Minimality screen = Minimality::Unknown;
  bool paths_agree = true;
};

struct ClassifyResult {
  FiniteType type;
  int nullity = 0;
  int twist = 0;
  bool up_to_permutation = true;
  std::vector<ClassifyRow> rows;
  std::size_t pbc_false = 0;
  std::size_t screen_decided = 0;
  std::size_t screen_disagreements = 0;
  std::size_t path_disagreements = 0;
  /// pbc fails exactly when a relevant side of dimension <= 3 has index 7;
  /// empty when some relevant side has dimension > 3.
  std::optional<bool> index7_rule;

  bool consistent() const;
};

/// Sweeps every admissible (S1, S2) pair. Throws DimTooLarge for nullity > 4.
ClassifyResult classify(FiniteType type, int nullity, int twist, bool up_to_permutation);
Json to_json(const ClassifyResult &result);
void print_table(const ClassifyResult &result, std::ostream &out);

struct VerifyRun {
  std::string source;
  VerificationReport pox;
  VerificationReport lemma;
  OrbitCoverReport orbit;
  FreeCenterReport free_center;
  double wall_seconds = 0.0;

  bool passed() const;
};

inline constexpr int kFreeCenterBound = 1;

/// Requires rank <= 4 and nullity <= 4.
VerifyRun run_verify(const EarsSpec &spec, int height_bound);
Json to_json(const VerifyRun &run);

EarsSpec load_spec_file(const std::string &path);

int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err);
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace eawg
