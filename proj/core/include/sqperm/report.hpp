#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqperm/invariants.hpp"
#include "sqperm/perm.hpp"
#include "sqperm/verifier.hpp"

namespace sqperm {

enum class OutputFormat { text, json, csv };

std::optional<OutputFormat> format_from_string(std::string_view s);

// CSV: one row per (p, Delta, g) with a fixed column set.
//   p,delta,g_a,g_b,beta0,h,predicted,brute,match,elapsed_ms
// h is empty unless p = 3 (mod 4) and p > 3; elapsed_ms is empty unless
// timing was requested, which keeps untimed output byte-for-byte stable.

struct CsvRecord {
  u64 p = 0;
  i64 delta = 0;
  Fp2 g;
  int beta0 = 0;
  std::optional<i64> h;
  int predicted = 0;
  int brute = 0;
  bool match = false;
  std::optional<std::int64_t> elapsed_us;  // stored at millisecond/1000 resolution

  friend bool operator==(const CsvRecord&, const CsvRecord&) = default;
};

CsvRecord to_csv_record(const SignReport& r, bool timing);
std::string csv_header();
std::string to_csv_row(const CsvRecord& r);
/// Throws InvalidArgument on a malformed row.
CsvRecord parse_csv_row(std::string_view line);
/// Skips the header; throws InvalidArgument if it does not match csv_header().
std::vector<CsvRecord> parse_csv(std::istream& in);

// Newline-delimited JSON, one object per report (lemma reports included).
std::string to_json_line(const SignReport& r);
SignReport parse_json_line(std::string_view line);
std::string to_json_line(const LemmaReport& r);
LemmaReport parse_lemma_json_line(std::string_view line);

void write_reports(std::ostream& out, const std::vector<SignReport>& reports, OutputFormat format,
                   bool timing);
void write_summary(std::ostream& out, const CampaignSummary& s);
void write_lemma_reports(std::ostream& out, const std::vector<LemmaReport>& reports,
                         OutputFormat format);
void write_class_numbers(std::ostream& out, const std::vector<ClassNumberResult>& rows,
                         OutputFormat format);
void write_table(std::ostream& out, const FieldCtx& ctx, Fp2 g, const PermSpec& perm,
                 OutputFormat format);

}  // namespace sqperm
