#include "bnf/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace bnf {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw InputError(std::string("malformed ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

template <class C>
C parse_coeff(std::string_view re, std::string_view im);

template <>
QComplex parse_coeff<QComplex>(std::string_view re, std::string_view im) {
  return QComplex(parse_rational(re), parse_rational(im));
}

template <>
DComplex parse_coeff<DComplex>(std::string_view re, std::string_view im) {
  return {parse_double(re), parse_double(im)};
}

std::string coeff_text(const QComplex& c) {
  return format_rational(c.re) + "  " + format_rational(c.im);
}

std::string coeff_text(const DComplex& c) {
  return format_double(c.real()) + "  " + format_double(c.imag());
}

struct Record {
  int line;
  int i;
  int j;
  MultiIndex q;
  std::string_view re, im;
};

template <class C>
Family<C> build_family(int n, int N, int trunc, const std::vector<Record>& records) {
  std::vector<std::vector<FieldTerm<C>>> terms(static_cast<std::size_t>(N));
  for (const auto& r : records) {
    try {
      terms[static_cast<std::size_t>(r.i - 1)].push_back({r.q, r.j, parse_coeff<C>(r.re, r.im)});
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(r.line, e.what());
    }
  }
  Family<C> f(n, trunc);
  for (auto& t : terms) f.push_back(VectorField<C>(n, trunc, std::move(t)));
  return f;
}

std::vector<double> parse_weights(const std::vector<std::string_view>& tok, int n, int line) {
  if (static_cast<int>(tok.size()) != n + 1) {
    throw ParseError(line, "weight table needs " + std::to_string(n) + " entries");
  }
  std::vector<double> w;
  for (std::size_t k = 1; k < tok.size(); ++k) {
    try {
      w.push_back(parse_double(tok[k]));
    } catch (const InputError& e) {
      throw ParseError(line, e.what());
    }
  }
  return w;
}

}  // namespace

MultiIndex parse_multi_index(std::string_view text, int n) {
  if (text == "-") return MultiIndex{};
  std::vector<MultiIndex::Entry> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view part = text.substr(start, end - start);
    if (part.empty()) throw InputError("malformed multi-index '" + std::string(text) + "'");
    const std::size_t caret = part.find('^');
    const int var = parse_int(part.substr(0, caret), "variable");
    const int exp = caret == std::string_view::npos ? 1 : parse_int(part.substr(caret + 1), "exponent");
    detail::check_var(var, n, "variable");
    if (exp <= 0) throw InputError("nonpositive exponent in '" + std::string(text) + "'");
    entries.push_back({var, exp});
    start = end + 1;
  }
  return MultiIndex(std::move(entries));
}

FamilyFile parse_family(std::string_view text) {
  FamilyFile file;
  std::optional<int> n, N, trunc;
  std::optional<Mode> mode;
  std::vector<double> w1, w2;
  std::vector<Record> records;
  std::set<std::tuple<int, int, std::string>> seen;
  bool tagged = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!tagged) {
      if (tok.size() != 1 || tok[0] != "VFAM/1") throw ParseError(line_no, "expected format tag VFAM/1");
      tagged = true;
      continue;
    }
    const std::string_view key = tok[0];
    const bool header = key == "n" || key == "N" || key == "trunc" || key == "mode" || key == "w1" || key == "w2";
    if (header) {
      if (!records.empty()) throw ParseError(line_no, "header line after term records");
      if (key == "w1" || key == "w2") {
        if (!n) throw ParseError(line_no, "weights before n");
        (key == "w1" ? w1 : w2) = parse_weights(tok, *n, line_no);
        continue;
      }
      if (tok.size() != 2) throw ParseError(line_no, "header '" + std::string(key) + "' takes one value");
      try {
        if (key == "mode") {
          if (tok[1] == "rational") mode = Mode::rational;
          else if (tok[1] == "float") mode = Mode::floating;
          else throw InputError("unknown mode '" + std::string(tok[1]) + "'");
        } else {
          const int v = parse_int(tok[1], "header value");
          if (v < 0) throw InputError("negative header value");
          (key == "n" ? n : key == "N" ? N : trunc) = v;
        }
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        throw ParseError(line_no, e.what());
      }
      continue;
    }
    if (!n || !N || !trunc || !mode) throw ParseError(line_no, "term record before complete header");
    if (tok.size() != 5) throw ParseError(line_no, "term record needs 5 fields: i j Q re im");
    Record r{line_no, 0, 0, {}, tok[3], tok[4]};
    try {
      r.i = parse_int(tok[0], "member index");
      r.j = parse_int(tok[1], "component");
      if (r.i < 1 || r.i > *N) throw InputError("member index " + std::to_string(r.i) + " outside 1.." + std::to_string(*N));
      detail::check_var(r.j, *n, "component");
      r.q = parse_multi_index(tok[2], *n);
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
    if (r.q.degree() > *trunc) {
      throw ParseError(line_no, "degree " + std::to_string(r.q.degree()) + " above truncation " + std::to_string(*trunc));
    }
    if (!seen.emplace(r.i, r.j, r.q.to_string()).second) {
      throw ParseError(line_no, "duplicate record for member " + std::to_string(r.i) + ", component " +
                                    std::to_string(r.j) + ", index " + r.q.to_string());
    }
    records.push_back(r);
    if (end == text.size()) break;
  }
  if (!tagged) throw ParseError(line_no, "missing format tag VFAM/1");
  if (!n || !N || !trunc || !mode) throw ParseError(line_no, "incomplete header: need n, N, trunc, mode");
  file.n = *n;
  file.N = *N;
  file.trunc = *trunc;
  file.mode = *mode;
  if (!w1.empty() || !w2.empty()) {
    WeightTable w;
    w.w1 = w1.empty() ? w2 : w1;
    w.w2 = w2.empty() ? w1 : w2;
    try {
      w.validate();
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
    file.weights = w;
  }
  if (file.mode == Mode::rational) {
    file.family = build_family<QComplex>(file.n, file.N, file.trunc, records);
  } else {
    file.family = build_family<DComplex>(file.n, file.N, file.trunc, records);
  }
  return file;
}

template <class C>
std::string serialize_family(const Family<C>& f, const std::optional<WeightTable>& weights) {
  std::ostringstream out;
  out << "VFAM/1\n"
      << "n " << f.n() << "\n"
      << "N " << f.size() << "\n"
      << "trunc " << f.trunc_degree() << "\n"
      << "mode " << (Scalar<C>::exact ? "rational" : "float") << "\n";
  if (weights) {
    out << "w1";
    for (double x : weights->w1) out << ' ' << format_double(x);
    out << "\nw2";
    for (double x : weights->w2) out << ' ' << format_double(x);
    out << "\n";
  }
  int i = 0;
  for (const auto& member : f) {
    ++i;
    for (const auto& t : member.terms()) {
      out << i << "  " << t.component << "  " << t.index.to_string() << "  " << coeff_text(t.coeff) << "\n";
    }
  }
  return out.str();
}

std::string serialize_family(const FamilyFile& file) {
  return std::visit([&](const auto& f) { return serialize_family(f, file.weights); }, file.family);
}

template <class C>
FamilyFile make_family_file(Family<C> f, std::optional<WeightTable> weights) {
  FamilyFile file;
  file.n = f.n();
  file.N = static_cast<int>(f.size());
  file.trunc = f.trunc_degree();
  file.mode = Scalar<C>::mode;
  file.weights = std::move(weights);
  file.family = std::move(f);
  return file;
}

std::string ledger_jsonl(std::span<const LedgerRow> rows) {
  std::string out;
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["m"] = r.m;
    j["norm_R"] = r.norm_r;
    j["norm_N"] = r.norm_n;
    j["norm_DN"] = r.norm_dn;
    j["eps_k"] = r.eps_k;
    j["r_k"] = r.r_k;
    j["i1_ok"] = r.i1_ok;
    j["i2_ok"] = r.i2_ok;
    j["i3_ok"] = r.i3_ok;
    const auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
    j["r11_norm"] = opt(r.r11);
    j["r12_norm"] = opt(r.r12);
    j["r2_norm"] = opt(r.r2);
    j["r3_norm"] = opt(r.r3);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string norm_table_csv(std::span<const NormReport> rows) {
  std::string out = "id,r,box,sample,mode\n";
  for (const auto& r : rows) {
    out += r.id + ',' + format_double(r.r) + ',' + format_double(r.box) + ',' + format_double(r.sample) + ',' +
           std::string(to_string(r.mode)) + '\n';
  }
  return out;
}

ConfigFile parse_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");
  ConfigFile cfg;
  std::vector<double> w1, w2;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "steps") cfg.run.steps = v.get<int>();
      else if (key == "trunc") cfg.run.trunc = v.get<int>();
      else if (key == "method") cfg.run.method = parse_solver_method(v.get<std::string>());
      else if (key == "diagnostics") cfg.run.diagnostics = v.get<bool>();
      else if (key == "b") cfg.b = v.get<double>();
      else if (key == "c0") cfg.c0 = v.get<double>();
      else if (key == "r0") cfg.r0 = v.get<double>();
      else if (key == "fraction") cfg.fraction = v.get<double>();
      else if (key == "w1") w1 = v.get<std::vector<double>>();
      else if (key == "w2") w2 = v.get<std::vector<double>>();
      else throw InputError("config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!w1.empty() || !w2.empty()) {
    cfg.run.weights.w1 = w1.empty() ? w2 : w1;
    cfg.run.weights.w2 = w2.empty() ? w1 : w2;
    cfg.run.weights.validate();
  }
  return cfg;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

template std::string serialize_family(const Family<QComplex>&, const std::optional<WeightTable>&);
template std::string serialize_family(const Family<DComplex>&, const std::optional<WeightTable>&);
template FamilyFile make_family_file(Family<QComplex>, std::optional<WeightTable>);
template FamilyFile make_family_file(Family<DComplex>, std::optional<WeightTable>);

}  // namespace bnf
