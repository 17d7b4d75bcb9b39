#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqperm/field.hpp"
#include "sqperm/invariants.hpp"
#include "sqperm/report.hpp"

namespace sqperm::cli {

enum ExitCode : int {
  kAllPass = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kContractViolation = 3,
};

enum class Subcommand { verify, sign, lemmas, classnum, table };

struct CliConfig {
  Subcommand command = Subcommand::verify;
  u64 pmin = 3;
  u64 pmax = 3;
  std::optional<i64> delta;
  std::optional<Fp2> g;
  std::size_t witnesses = 3;
  std::vector<LemmaId> oracles;
  bool ratio = false;
  u64 ratio_cap = 31;
  u64 cyclotomic_cap = kDefaultCyclotomicCap;
  Formula formula = Formula::stated;
  OutputFormat format = OutputFormat::text;
  std::string output;  // empty: standard output
  unsigned workers = 1;
  bool timing = false;
};

/// "a,b" -> Fp2 with coefficients taken as given (must already be in [0, p)).
Fp2 parse_g(const std::string& text);
/// "all", "none", or a comma-separated list of lemma names.
std::vector<LemmaId> parse_oracles(const std::string& text);

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sign(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_lemmas(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classnum(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_table(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name), validates, and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqperm::cli
