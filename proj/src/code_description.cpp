#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lrc/coset_lab.hpp"
#include "lrc/errors.hpp"

namespace lrc {

Word parse_word(std::string_view bits) {
  if (bits.empty() || bits.size() > kMaxLength) {
    throw ParseError("bit-string length must be 1.." + std::to_string(kMaxLength) + ": '" +
                     std::string(bits) + "'");
  }
  Word w = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      w |= Word{1} << i;
    } else if (bits[i] != '0') {
      throw ParseError("bit-string may contain only 0 and 1: '" + std::string(bits) + "'");
    }
  }
  return w;
}

std::string format_word(Word w, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i) {
    if ((w >> i) & 1U) s[i] = '1';
  }
  return s;
}

std::vector<int> support(Word w) {
  std::vector<int> out;
  for (int i = 0; w != 0; ++i, w >>= 1) {
    if (w & 1U) out.push_back(i + 1);
  }
  return out;
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

int parse_int(std::string_view tok, std::string_view key) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("field '" + std::string(key) + "': not an integer: '" + std::string(tok) + "'");
  }
  return v;
}

std::string_view rstrip(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

CodeDescription parse_code_description(std::string_view text) {
  std::map<std::string, std::vector<std::string_view>, std::less<>> fields;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = rstrip(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key: value'");
    }
    const std::string key(line.substr(0, colon));
    if (key != "n" && key != "r" && key != "rows" && key != "repair_rows") {
      throw ParseError("line " + std::to_string(line_no) + ": unknown field '" + key + "'");
    }
    if (fields.contains(key)) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate field '" + key + "'");
    }
    fields[key] = split_tokens(line.substr(colon + 1));
  }

  for (const char* key : {"n", "r", "rows", "repair_rows"}) {
    if (!fields.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  }
  CodeDescription code;
  const auto& n_tok = fields["n"];
  const auto& r_tok = fields["r"];
  if (n_tok.size() != 1) throw ParseError("field 'n' takes exactly one integer");
  if (r_tok.size() != 1) throw ParseError("field 'r' takes exactly one integer");
  code.n = parse_int(n_tok[0], "n");
  code.r = parse_int(r_tok[0], "r");
  if (code.n < 1 || code.n > kMaxLength) {
    throw ParseError("field 'n' must lie in 1.." + std::to_string(kMaxLength));
  }
  for (auto tok : fields["rows"]) {
    if (static_cast<int>(tok.size()) != code.n) {
      throw ParseError("row '" + std::string(tok) + "' has length " + std::to_string(tok.size()) +
                       ", expected n=" + std::to_string(code.n));
    }
    code.rows.push_back(parse_word(tok));
  }
  for (auto tok : fields["repair_rows"]) code.repair_rows.push_back(parse_int(tok, "repair_rows"));
  return code;
}

CodeDescription load_code_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open code file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code_description(buf.str());
}

std::string to_text(const CodeDescription& code) {
  std::ostringstream out;
  out << "n: " << code.n << "\nr: " << code.r << "\nrows:";
  for (Word w : code.rows) out << ' ' << format_word(w, code.n);
  out << "\nrepair_rows:";
  for (int i : code.repair_rows) out << ' ' << i;
  out << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

std::vector<Word> BinaryLinearCode::repair_groups() const {
  std::vector<Word> groups;
  groups.reserve(repair_rows_.size());
  for (int i : repair_rows_) groups.push_back(rows_[i]);
  return groups;
}

std::uint32_t BinaryLinearCode::syndrome(Word v) const {
  std::uint32_t s = 0;
  for (std::size_t j = 0; j < generator_.size(); ++j) {
    s |= static_cast<std::uint32_t>(std::popcount(generator_[j] & v) & 1) << j;
  }
  return s;
}

BinaryLinearCode canonicalize(const CodeDescription& code) {
  const int n = code.n;
  if (n < 1 || n > kMaxLength) {
    throw InvariantViolation("row length", "n must lie in 1.." + std::to_string(kMaxLength));
  }
  if (code.r < 1) throw InvariantViolation("locality", "r must be >= 1");
  const Word full = (Word{1} << n) - 1;
  for (std::size_t i = 0; i < code.rows.size(); ++i) {
    if (code.rows[i] & ~full) {
      throw InvariantViolation("row length", "row " + std::to_string(i) + " is longer than n");
    }
  }

  std::set<int> seen;
  Word covered = 0;
  for (int idx : code.repair_rows) {
    if (idx < 0 || idx >= static_cast<int>(code.rows.size()) || !seen.insert(idx).second) {
      throw InvariantViolation("repair index", "invalid or repeated repair row index " + std::to_string(idx));
    }
    const Word row = code.rows[idx];
    if (row & covered) {
      throw InvariantViolation("disjointness violated",
                               "repair row " + std::to_string(idx) + " overlaps an earlier repair row");
    }
    const int wt = std::popcount(row);
    if (wt < 1 || wt > code.r + 1) {
      throw InvariantViolation("repair-group size", "repair row " + std::to_string(idx) + " has weight " +
                                                        std::to_string(wt) + ", allowed 1..r+1");
    }
    covered |= row;
  }
  if (!code.repair_rows.empty() && covered != full) {
    throw InvariantViolation("coverage gap", "coordinates " + format_word(full & ~covered, n) +
                                                 " have no repair group");
  }

  BinaryLinearCode out;
  out.n_ = n;
  out.r_ = code.r;
  out.rows_ = code.rows;
  out.repair_rows_ = code.repair_rows;

  // Reduced row echelon form over F2; pivot = lowest set bit of each basis row.
  std::vector<Word> basis;
  std::vector<int> pivots;
  for (Word row : code.rows) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if ((row >> pivots[k]) & 1U) row ^= basis[k];
    }
    if (row == 0) continue;
    const int p = std::countr_zero(row);
    for (auto& b : basis) {
      if ((b >> p) & 1U) b ^= row;
    }
    basis.push_back(row);
    pivots.push_back(p);
  }
  std::vector<std::size_t> order(basis.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots[a] < pivots[b]; });
  for (auto i : order) out.dual_basis_.push_back(basis[i]);

  // Null space: one generator per free coordinate f, with bit p set for each
  // pivot row (pivot p) that contains f.
  Word pivot_mask = 0;
  for (int p : pivots) pivot_mask |= Word{1} << p;
  for (int f = 0; f < n; ++f) {
    if ((pivot_mask >> f) & 1U) continue;
    Word c = Word{1} << f;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if ((basis[k] >> f) & 1U) c |= Word{1} << pivots[k];
    }
    out.generator_.push_back(c);
  }

  out.columns_.resize(n);
  for (int i = 0; i < n; ++i) out.columns_[i] = out.syndrome(Word{1} << i);
  return out;
}

}  // namespace lrc
