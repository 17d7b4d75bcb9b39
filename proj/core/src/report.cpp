#include "sqperm/report.hpp"

#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace sqperm {

using nlohmann::json;

std::optional<OutputFormat> format_from_string(std::string_view s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  return std::nullopt;
}

namespace {

std::string sign_str(int s) { return s > 0 ? "+1" : (s < 0 ? "-1" : "0"); }

std::string format_ms(std::int64_t us) {
  std::ostringstream os;
  os << us / 1000 << '.' << std::setw(3) << std::setfill('0') << us % 1000;
  return os.str();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

template <typename T>
T parse_int(std::string_view s, const char* field) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument(std::string("csv: bad ") + field + " '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t parse_ms(std::string_view s) {
  const auto dot = s.find('.');
  if (dot == std::string_view::npos || s.size() - dot != 4) {
    throw InvalidArgument("csv: bad elapsed_ms '" + std::string(s) + "'");
  }
  return parse_int<std::int64_t>(s.substr(0, dot), "elapsed_ms") * 1000 +
         parse_int<std::int64_t>(s.substr(dot + 1), "elapsed_ms");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json fp2_json(const Fp2& x) { return json::array({x.a, x.b}); }

Fp2 fp2_from(const json& j) { return {j.at(0).get<u64>(), j.at(1).get<u64>()}; }

json value_json(const LemmaValue& v) {
  if (const auto* i = std::get_if<i64>(&v)) return *i;
  return fp2_json(std::get<Fp2>(v));
}

LemmaValue value_from(const json& j) {
  if (j.is_array()) return fp2_from(j);
  return j.get<i64>();
}

json lemma_json(const LemmaReport& r) {
  return {
      {"lemma", to_string(r.id)},
      {"p", r.p},
      {"delta", r.delta ? json(*r.delta) : json(nullptr)},
      {"lhs", value_json(r.lhs)},
      {"rhs", value_json(r.rhs)},
      {"pass", r.pass},
      {"skipped", r.skipped},
      {"note", r.note},
  };
}

LemmaReport lemma_from(const json& j) {
  LemmaReport r;
  const auto id = lemma_from_string(j.at("lemma").get<std::string>());
  if (!id) throw InvalidArgument("json: unknown lemma id");
  r.id = *id;
  r.p = j.at("p").get<u64>();
  if (!j.at("delta").is_null()) r.delta = j.at("delta").get<i64>();
  r.lhs = value_from(j.at("lhs"));
  r.rhs = value_from(j.at("rhs"));
  r.pass = j.at("pass").get<bool>();
  r.skipped = j.at("skipped").get<bool>();
  r.note = j.at("note").get<std::string>();
  return r;
}

std::optional<ReportErrorKind> error_kind_from(std::string_view s) {
  for (auto k : {ReportErrorKind::set_mismatch, ReportErrorKind::contract, ReportErrorKind::other}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

json parse_or_throw(std::string_view line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("json: ") + e.what());
  }
}

}  // namespace

CsvRecord to_csv_record(const SignReport& r, bool timing) {
  CsvRecord c;
  c.p = r.p;
  c.delta = r.delta;
  c.g = r.g;
  c.beta0 = r.beta0;
  c.h = r.h;
  c.predicted = r.predicted;
  c.brute = r.brute;
  c.match = r.match;
  if (timing) c.elapsed_us = r.timing.total_us();
  return c;
}

std::string csv_header() { return "p,delta,g_a,g_b,beta0,h,predicted,brute,match,elapsed_ms"; }

std::string to_csv_row(const CsvRecord& r) {
  std::ostringstream os;
  os << r.p << ',' << r.delta << ',' << r.g.a << ',' << r.g.b << ',' << r.beta0 << ',';
  if (r.h) os << *r.h;
  os << ',' << r.predicted << ',' << r.brute << ',' << (r.match ? "true" : "false") << ',';
  if (r.elapsed_us) os << format_ms(*r.elapsed_us);
  return os.str();
}

CsvRecord parse_csv_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line, ',');
  if (f.size() != 10) throw InvalidArgument("csv: expected 10 columns, got " + std::to_string(f.size()));
  CsvRecord r;
  r.p = parse_int<u64>(f[0], "p");
  r.delta = parse_int<i64>(f[1], "delta");
  r.g = {parse_int<u64>(f[2], "g_a"), parse_int<u64>(f[3], "g_b")};
  r.beta0 = parse_int<int>(f[4], "beta0");
  if (!f[5].empty()) r.h = parse_int<i64>(f[5], "h");
  r.predicted = parse_int<int>(f[6], "predicted");
  r.brute = parse_int<int>(f[7], "brute");
  if (f[8] == "true") {
    r.match = true;
  } else if (f[8] != "false") {
    throw InvalidArgument("csv: bad match '" + std::string(f[8]) + "'");
  }
  if (!f[9].empty()) r.elapsed_us = parse_ms(f[9]);
  return r;
}

std::vector<CsvRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) throw InvalidArgument("csv: missing or wrong header");
  std::vector<CsvRecord> out;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse_csv_row(line));
  }
  return out;
}

std::string to_json_line(const SignReport& r) {
  json lemmas = json::array();
  for (const auto& l : r.lemmas) lemmas.push_back(lemma_json(l));
  json j = {
      {"p", r.p},
      {"delta", r.delta},
      {"g", fp2_json(r.g)},
      {"beta0", r.beta0},
      {"beta0_witness", fp2_json(r.beta0_witness)},
      {"h", r.h ? json(*r.h) : json(nullptr)},
      {"predicted", r.predicted},
      {"brute", r.brute},
      {"ratio_sign", r.ratio_sign ? json(*r.ratio_sign) : json(nullptr)},
      {"match", r.match},
      {"lemmas", std::move(lemmas)},
      {"timing_us", {{"build", r.timing.build_us}, {"sign", r.timing.sign_us}, {"lemma", r.timing.lemma_us}}},
      {"error", r.error ? json{{"kind", to_string(r.error->kind)}, {"message", r.error->message}}
                        : json(nullptr)},
  };
  return j.dump();
}

SignReport parse_json_line(std::string_view line) {
  const json j = parse_or_throw(line);
  try {
    SignReport r;
    r.p = j.at("p").get<u64>();
    r.delta = j.at("delta").get<i64>();
    r.g = fp2_from(j.at("g"));
    r.beta0 = j.at("beta0").get<int>();
    r.beta0_witness = fp2_from(j.at("beta0_witness"));
    if (!j.at("h").is_null()) r.h = j.at("h").get<i64>();
    r.predicted = j.at("predicted").get<int>();
    r.brute = j.at("brute").get<int>();
    if (!j.at("ratio_sign").is_null()) r.ratio_sign = j.at("ratio_sign").get<int>();
    r.match = j.at("match").get<bool>();
    for (const auto& l : j.at("lemmas")) r.lemmas.push_back(lemma_from(l));
    const auto& t = j.at("timing_us");
    r.timing = {t.at("build").get<std::int64_t>(), t.at("sign").get<std::int64_t>(),
                t.at("lemma").get<std::int64_t>()};
    if (const auto& e = j.at("error"); !e.is_null()) {
      const auto kind = error_kind_from(e.at("kind").get<std::string>());
      if (!kind) throw InvalidArgument("json: unknown error kind");
      r.error = ReportError{*kind, e.at("message").get<std::string>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("json: ") + e.what());
  }
}

std::string to_json_line(const LemmaReport& r) { return lemma_json(r).dump(); }

LemmaReport parse_lemma_json_line(std::string_view line) {
  const json j = parse_or_throw(line);
  try {
    return lemma_from(j);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("json: ") + e.what());
  }
}

void write_reports(std::ostream& out, const std::vector<SignReport>& reports, OutputFormat format,
                   bool timing) {
  switch (format) {
    case OutputFormat::csv:
      out << csv_header() << '\n';
      for (const auto& r : reports) out << to_csv_row(to_csv_record(r, timing)) << '\n';
      break;
    case OutputFormat::json:
      for (const auto& r : reports) out << to_json_line(r) << '\n';
      break;
    case OutputFormat::text:
      for (const auto& r : reports) {
        out << "p=" << r.p << " delta=" << r.delta << " g=" << to_string(r.g);
        if (r.error) {
          out << " ERROR[" << to_string(r.error->kind) << "] " << r.error->message << '\n';
          continue;
        }
        out << " beta0=" << r.beta0 << " witness=" << to_string(r.beta0_witness);
        if (r.h) out << " h=" << *r.h;
        out << " predicted=" << sign_str(r.predicted) << " brute=" << sign_str(r.brute);
        if (r.ratio_sign) out << " ratio=" << sign_str(*r.ratio_sign);
        out << (r.match ? " match" : " MISMATCH");
        if (timing) out << " elapsed_ms=" << format_ms(r.timing.total_us());
        out << '\n';
        for (const auto& l : r.lemmas) {
          out << "    " << to_string(l.id) << ": ";
          if (l.skipped) {
            out << "skipped (" << l.note << ")\n";
            continue;
          }
          out << (l.pass ? "pass" : "FAIL") << " lhs=" << to_string(l.lhs) << " rhs=" << to_string(l.rhs);
          if (!l.note.empty()) out << " " << l.note;
          out << '\n';
        }
      }
      break;
  }
}

void write_summary(std::ostream& out, const CampaignSummary& s) {
  out << "primes=" << s.primes << " reports=" << s.reports << " matches=" << s.matches
      << " mismatches=" << s.mismatches << " errors=" << s.errors
      << " lemma_failures=" << s.lemma_failures << " slowest_p=" << s.slowest_prime
      << " slowest_ms=" << format_ms(s.slowest_us) << '\n';
}

void write_lemma_reports(std::ostream& out, const std::vector<LemmaReport>& reports,
                         OutputFormat format) {
  switch (format) {
    case OutputFormat::csv:
      out << "p,delta,lemma,lhs,rhs,pass,skipped,note\n";
      for (const auto& l : reports) {
        out << l.p << ',' << (l.delta ? std::to_string(*l.delta) : "") << ',' << to_string(l.id) << ','
            << csv_escape(to_string(l.lhs)) << ',' << csv_escape(to_string(l.rhs)) << ','
            << (l.pass ? "true" : "false") << ',' << (l.skipped ? "true" : "false") << ','
            << csv_escape(l.note) << '\n';
      }
      break;
    case OutputFormat::json:
      for (const auto& l : reports) out << to_json_line(l) << '\n';
      break;
    case OutputFormat::text:
      for (const auto& l : reports) {
        out << "p=" << l.p;
        if (l.delta) out << " delta=" << *l.delta;
        out << ' ' << to_string(l.id) << ": ";
        if (l.skipped) {
          out << "skipped (" << l.note << ")\n";
          continue;
        }
        out << (l.pass ? "pass" : "FAIL") << " lhs=" << to_string(l.lhs) << " rhs=" << to_string(l.rhs);
        if (!l.note.empty()) out << ' ' << l.note;
        out << '\n';
      }
      break;
  }
}

void write_class_numbers(std::ostream& out, const std::vector<ClassNumberResult>& rows,
                         OutputFormat format) {
  switch (format) {
    case OutputFormat::csv:
      out << "p,h_formula,h_forms,agree\n";
      for (const auto& r : rows) {
        out << r.p << ',' << r.h_formula << ',' << r.h_forms << ',' << (r.agree() ? "true" : "false") << '\n';
      }
      break;
    case OutputFormat::json:
      for (const auto& r : rows) {
        out << json{{"p", r.p}, {"h_formula", r.h_formula}, {"h_forms", r.h_forms}, {"agree", r.agree()}}.dump()
            << '\n';
      }
      break;
    case OutputFormat::text:
      for (const auto& r : rows) {
        out << "h(-" << r.p << ") = " << r.h_forms << " (forms), " << r.h_formula << " (character count)"
            << (r.agree() ? "" : "  DISAGREE") << '\n';
      }
      break;
  }
}

void write_table(std::ostream& out, const FieldCtx& ctx, Fp2 g, const PermSpec& perm,
                 OutputFormat format) {
  const auto& src = perm.source.elems;
  const auto& dst = perm.target.elems;
  switch (format) {
    case OutputFormat::csv:
      out << "index,s_star_a,s_star_b,s_a,s_b,mapping\n";
      for (std::size_t i = 0; i < src.size(); ++i) {
        out << i << ',' << src[i].a << ',' << src[i].b << ',' << dst[i].a << ',' << dst[i].b << ','
            << perm.mapping[i] << '\n';
      }
      break;
    case OutputFormat::json: {
      json rows = json::array();
      for (std::size_t i = 0; i < src.size(); ++i) {
        rows.push_back({{"index", i}, {"s_star", fp2_json(src[i])}, {"s", fp2_json(dst[i])},
                        {"mapping", perm.mapping[i]}});
      }
      out << json{{"p", ctx.p()}, {"delta", ctx.delta()}, {"g", fp2_json(g)}, {"rows", std::move(rows)}}.dump()
          << '\n';
      break;
    }
    case OutputFormat::text:
      out << "p=" << ctx.p() << " delta=" << ctx.delta() << " g=" << to_string(g) << " length=" << src.size()
          << '\n';
      out << "index  S*            S             S[i] = S*[mapping]\n";
      for (std::size_t i = 0; i < src.size(); ++i) {
        out << std::left << std::setw(7) << i << std::setw(14) << to_string(src[i]) << std::setw(14)
            << to_string(dst[i]) << perm.mapping[i] << '\n';
      }
      break;
  }
}

}  // namespace sqperm
