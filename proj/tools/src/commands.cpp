#include "sqperm_cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "sqperm/perm.hpp"
#include "sqperm/parallel.hpp"
#include "sqperm/verifier.hpp"

namespace sqperm::cli {

namespace {

// Routes output to --output when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidArgument("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int exit_for(const std::vector<SignReport>& reports) {
  int code = kAllPass;
  for (const auto& r : reports) {
    if (r.error && r.error->kind == ReportErrorKind::contract) return kContractViolation;
    if (!r.ok()) code = kVerificationFailure;
  }
  return code;
}

std::vector<u64> require_primes(const CliConfig& cfg) {
  auto primes = primes_in_range(cfg.pmin, cfg.pmax);
  if (primes.empty()) {
    throw InvalidArgument("no primes in [" + std::to_string(cfg.pmin) + ", " + std::to_string(cfg.pmax) + "]");
  }
  return primes;
}

u64 require_single_prime(const CliConfig& cfg, const char* who) {
  if (cfg.pmin != cfg.pmax) throw InvalidArgument(std::string(who) + " needs a single prime (--p)");
  if (cfg.pmin < 3 || !is_prime(cfg.pmin)) {
    throw InvalidArgument(std::string(who) + ": " + std::to_string(cfg.pmin) + " is not an odd prime");
  }
  return cfg.pmin;
}

VerifyOptions verify_options(const CliConfig& cfg) {
  VerifyOptions o;
  o.witnesses = cfg.witnesses;
  o.lemmas = cfg.oracles;
  o.ratio = cfg.ratio;
  o.ratio_cap = cfg.ratio_cap;
  o.cyclotomic_cap = cfg.cyclotomic_cap;
  o.formula = cfg.formula;
  o.delta = cfg.delta;
  o.g = cfg.g;
  o.timing = cfg.timing;
  return o;
}

}  // namespace

Fp2 parse_g(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidArgument("--g expects \"a,b\", got '" + text + "'");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const u64 va = std::stoull(a, &used_a);
    const u64 vb = std::stoull(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || a.front() == '-' || b.front() == '-') throw std::invalid_argument("");
    return {va, vb};
  } catch (const std::logic_error&) {
    throw InvalidArgument("--g expects two non-negative integers \"a,b\", got '" + text + "'");
  }
}

std::vector<LemmaId> parse_oracles(const std::string& text) {
  if (text.empty() || text == "none") return {};
  if (text == "all") {
    auto ids = field_lemmas();
    ids.push_back(LemmaId::sun_tau);
    return ids;
  }
  std::vector<LemmaId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto id = lemma_from_string(item);
    if (!id) throw InvalidArgument("unknown oracle '" + item + "'");
    if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
  }
  return out;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  require_primes(cfg);
  Campaign c;
  c.lo = cfg.pmin;
  c.hi = cfg.pmax;
  c.options = verify_options(cfg);
  c.workers = cfg.workers;
  const auto result = run_campaign(c);

  Sink sink(cfg.output, out);
  write_reports(sink.get(), result.reports, cfg.format, cfg.timing);
  write_summary(cfg.format == OutputFormat::text ? sink.get() : err, result.summary);
  return exit_for(result.reports);
}

int cmd_sign(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  const u64 p = require_single_prime(cfg, "sign");
  auto options = verify_options(cfg);
  options.ratio = cfg.ratio || p <= cfg.ratio_cap;
  const auto reports = verify_prime(p, options);
  Sink sink(cfg.output, out);
  write_reports(sink.get(), reports, cfg.format, cfg.timing);
  return exit_for(reports);
}

int cmd_lemmas(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  const auto primes = require_primes(cfg);
  // Checks that depend only on p run once per prime, with the first Delta.
  std::vector<LemmaId> per_field;
  std::vector<LemmaId> per_prime;
  for (LemmaId id : cfg.oracles) {
    const bool field_dependent = id == LemmaId::A || id == LemmaId::B || id == LemmaId::C || id == LemmaId::D ||
                                 id == LemmaId::cyclotomic || id == LemmaId::count_A ||
                                 id == LemmaId::count_B || id == LemmaId::legendre_prod;
    (field_dependent ? per_field : per_prime).push_back(id);
  }

  std::vector<std::vector<LemmaReport>> slots(primes.size());
  parallel_for_index(primes.size(), cfg.workers, [&](std::size_t i) {
    const u64 p = primes[i];
    const auto witnesses = select_witnesses(p, cfg.witnesses, cfg.delta, cfg.g);
    for (std::size_t j = 0; j < witnesses.size(); ++j) {
      const FieldCtx ctx(p, witnesses[j].delta);
      auto ids = per_field;
      if (j == 0) ids.insert(ids.end(), per_prime.begin(), per_prime.end());
      auto reports = run_field_lemmas(ctx, ids, witnesses[j].g, cfg.formula, cfg.cyclotomic_cap);
      for (auto& r : reports) slots[i].push_back(std::move(r));
    }
  });
  std::vector<LemmaReport> all;
  for (auto& s : slots) {
    for (auto& r : s) all.push_back(std::move(r));
  }

  Sink sink(cfg.output, out);
  write_lemma_reports(sink.get(), all, cfg.format);
  const bool ok = std::all_of(all.begin(), all.end(), [](const LemmaReport& r) { return r.pass || r.skipped; });
  return ok ? kAllPass : kVerificationFailure;
}

int cmd_classnum(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  std::vector<ClassNumberResult> rows;
  for (u64 p : primes_in_range(cfg.pmin, cfg.pmax)) {
    if (p % 4 == 3 && p > 3) rows.push_back(class_number(p));
  }
  if (rows.empty()) {
    throw InvalidArgument("no primes p = 3 (mod 4), p > 3 in [" + std::to_string(cfg.pmin) + ", " +
                          std::to_string(cfg.pmax) + "]");
  }
  Sink sink(cfg.output, out);
  write_class_numbers(sink.get(), rows, cfg.format);
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const ClassNumberResult& r) { return r.agree(); });
  return ok ? kAllPass : kVerificationFailure;
}

int cmd_table(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  const u64 p = require_single_prime(cfg, "table");
  const auto w = select_witnesses(p, 1, cfg.delta, cfg.g).front();
  const FieldCtx ctx(p, w.delta);
  const PermSpec perm = permutation_from(build_S_star(ctx, w.g), build_S(ctx));
  Sink sink(cfg.output, out);
  write_table(sink.get(), ctx, w.g, perm, cfg.format);
  return kAllPass;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sign of the permutation of squares in F_{p^2} induced by a primitive root"};
  app.require_subcommand(1);

  struct Raw {
    u64 p = 0;
    u64 pmin = 3;
    u64 pmax = 0;
    i64 delta = 0;
    std::string g;
    std::size_t witnesses = 0;
    std::string oracles;
    bool ratio = false;
    u64 ratio_cap = kDefaultRatioCap;
    u64 cyclotomic_cap = kDefaultCyclotomicCap;
    std::string formula = "stated";
    std::string format = "text";
    std::string output;
    unsigned workers = 0;
    bool timing = false;
  } raw;

  struct Handles {
    CLI::Option* p;
    CLI::Option* pmin;
    CLI::Option* pmax;
    CLI::Option* delta;
    CLI::Option* g;
    CLI::Option* witnesses;
    CLI::Option* oracles;
    CLI::Option* workers;
  };

  auto add_common = [&raw](CLI::App* sub) {
    Handles h{};
    h.p = sub->add_option("--p", raw.p, "Single prime (sets --pmin and --pmax)");
    h.pmin = sub->add_option("--pmin", raw.pmin, "Lower end of the prime range (default 3)");
    h.pmax = sub->add_option("--pmax", raw.pmax, "Upper end of the prime range");
    h.delta = sub->add_option("--delta", raw.delta, "Override Delta (single prime only)");
    h.g = sub->add_option("--g", raw.g, "Override the generator as \"a,b\" (single prime only)");
    h.witnesses = sub->add_option("--witnesses", raw.witnesses, "(Delta, g) witnesses per prime");
    h.oracles = sub->add_option("--oracles", raw.oracles, "Lemma oracles: all, none, or a comma list");
    sub->add_flag("--ratio", raw.ratio, "Also sign by the product-ratio method (p <= --ratio-cap)");
    sub->add_option("--ratio-cap", raw.ratio_cap, "Largest p for the ratio method");
    sub->add_option("--cyclotomic-cap", raw.cyclotomic_cap, "Largest p for the cyclotomic oracle");
    sub->add_option("--formula", raw.formula, "Closed form to check: stated or corrected")
        ->check(CLI::IsMember({"stated", "corrected"}));
    sub->add_option("--format", raw.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output", raw.output, "Output file (default standard output)");
    h.workers = sub->add_option("--workers", raw.workers, "Worker threads (env SQPERM_WORKERS)");
    sub->add_flag("--timing", raw.timing, "Record per-phase timings (output no longer reproducible)");
    return h;
  };

  auto* verify = app.add_subcommand("verify", "Check the closed-form sign over a prime range");
  auto* sign = app.add_subcommand("sign", "Full sign report for one prime");
  auto* lemmas = app.add_subcommand("lemmas", "Run the arithmetic identity oracles");
  auto* classnum = app.add_subcommand("classnum", "Tabulate h(-p) by two methods");
  auto* table = app.add_subcommand("table", "Print S, S* and the index mapping");
  const Handles hv = add_common(verify);
  const Handles hs = add_common(sign);
  const Handles hl = add_common(lemmas);
  const Handles hc = add_common(classnum);
  const Handles ht = add_common(table);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAllPass : kUsageError;
  }

  CliConfig cfg;
  Handles h{};
  if (verify->parsed()) {
    cfg.command = Subcommand::verify;
    h = hv;
  } else if (sign->parsed()) {
    cfg.command = Subcommand::sign;
    h = hs;
  } else if (lemmas->parsed()) {
    cfg.command = Subcommand::lemmas;
    h = hl;
  } else if (classnum->parsed()) {
    cfg.command = Subcommand::classnum;
    h = hc;
  } else {
    cfg.command = Subcommand::table;
    h = ht;
  }

  try {
    if (h.p->count() > 0) {
      if (h.pmin->count() > 0 || h.pmax->count() > 0) throw InvalidArgument("--p excludes --pmin/--pmax");
      cfg.pmin = cfg.pmax = raw.p;
    } else {
      if (h.pmax->count() == 0) throw InvalidArgument("give --p or --pmax");
      cfg.pmin = raw.pmin;
      cfg.pmax = raw.pmax;
    }
    if (cfg.pmax > kMaxPrime) throw InvalidArgument("--pmax exceeds 2^31-1");
    if (cfg.pmin < 3) throw InvalidArgument("--pmin must be at least 3");
    if (cfg.pmax < cfg.pmin) throw InvalidArgument("--pmax is below --pmin");

    const bool single = cfg.pmin == cfg.pmax;
    if (h.delta->count() > 0) {
      if (!single) throw InvalidArgument("--delta needs a single-prime run");
      cfg.delta = raw.delta;
    }
    if (h.g->count() > 0) {
      if (!single) throw InvalidArgument("--g needs a single-prime run");
      cfg.g = parse_g(raw.g);
    }
    if (cfg.delta && is_prime(cfg.pmin)) FieldCtx(cfg.pmin, *cfg.delta);  // validates Delta

    const bool single_witness_default = cfg.command == Subcommand::sign || cfg.command == Subcommand::lemmas;
    cfg.witnesses = h.witnesses->count() > 0 ? raw.witnesses : (single_witness_default ? 1 : 3);
    if (cfg.witnesses == 0) throw InvalidArgument("--witnesses must be at least 1");
    if (cfg.g) cfg.witnesses = 1;

    if (h.oracles->count() > 0) {
      cfg.oracles = parse_oracles(raw.oracles);
    } else if (cfg.command == Subcommand::lemmas) {
      cfg.oracles = parse_oracles("all");
    }
    cfg.ratio = raw.ratio;
    cfg.ratio_cap = raw.ratio_cap;
    cfg.cyclotomic_cap = raw.cyclotomic_cap;
    cfg.formula = *formula_from_string(raw.formula);
    cfg.format = *format_from_string(raw.format);
    cfg.output = raw.output;
    cfg.workers = h.workers->count() > 0 ? std::max(1u, raw.workers) : default_worker_count();
    cfg.timing = raw.timing;

    switch (cfg.command) {
      case Subcommand::verify: return cmd_verify(cfg, out, err);
      case Subcommand::sign: return cmd_sign(cfg, out, err);
      case Subcommand::lemmas: return cmd_lemmas(cfg, out, err);
      case Subcommand::classnum: return cmd_classnum(cfg, out, err);
      case Subcommand::table: return cmd_table(cfg, out, err);
    }
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << '\n';
    return kContractViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kContractViolation;
  }
  return kUsageError;
}

}  // namespace sqperm::cli
