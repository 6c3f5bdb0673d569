#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "bnf/newton.hpp"

namespace bnf {

// VFAM/1 text:
//   VFAM/1
//   n <n>
//   N <N>
//   trunc <d>
//   mode rational|float
//   [w1 <w1_1> ... <w1_n>]
//   [w2 <w2_1> ... <w2_n>]
//   <i> <j> <Q> <re> <im>        one record per term, Q as "1^2,-1" or "-"
// Blank lines and lines starting with '#' are ignored.
struct FamilyFile {
  int n = 0;
  int N = 0;
  int trunc = 0;
  Mode mode = Mode::rational;
  std::optional<WeightTable> weights;
  std::variant<Family<QComplex>, Family<DComplex>> family;

  template <class C>
  const Family<C>& as() const {
    return std::get<Family<C>>(family);
  }
};

MultiIndex parse_multi_index(std::string_view text, int n);

FamilyFile parse_family(std::string_view text);

template <class C>
std::string serialize_family(const Family<C>& f, const std::optional<WeightTable>& weights = std::nullopt);
std::string serialize_family(const FamilyFile& file);

template <class C>
FamilyFile make_family_file(Family<C> f, std::optional<WeightTable> weights = std::nullopt);

// One JSON object per line with the ledger fields in fixed order.
std::string ledger_jsonl(std::span<const LedgerRow> rows);

// id,r,box,sample,mode
std::string norm_table_csv(std::span<const NormReport> rows);

// JSON object with optional keys steps, trunc, method, diagnostics, b, c0, r0,
// fraction, w1, w2. Unknown keys are an error.
struct ConfigFile {
  RunConfig run;
  std::optional<double> b, c0, r0, fraction;
};
ConfigFile parse_config(std::string_view json_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace bnf
