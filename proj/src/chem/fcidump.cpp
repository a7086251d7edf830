#include "conint/chem/fcidump.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "conint/error.hpp"

namespace conint::chem {

namespace {

constexpr double kConflictTol = 1e-10;

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

// Parses NAME=value[,value...] pairs of the namelist into a map.
std::map<std::string, std::string> parse_namelist(const std::string& text, int line) {
  std::map<std::string, std::string> out;
  std::string body = text;
  for (auto& ch : body)
    if (ch == '\n' || ch == '\r' || ch == '\t') ch = ' ';
  std::size_t pos = 0;
  std::string current_key;
  while (pos < body.size()) {
    const auto eq = body.find('=', pos);
    if (eq == std::string::npos) break;
    // key is the last identifier before '='
    std::size_t kend = eq;
    while (kend > pos && body[kend - 1] == ' ') --kend;
    std::size_t kbeg = kend;
    while (kbeg > pos && (std::isalnum(static_cast<unsigned char>(body[kbeg - 1])) ||
                          body[kbeg - 1] == '_'))
      --kbeg;
    if (kbeg == kend) throw ParseError("malformed FCIDUMP header near '='", line);
    if (!current_key.empty()) out[current_key] += body.substr(pos, kbeg - pos);
    current_key = upper(body.substr(kbeg, kend - kbeg));
    out[current_key];
    pos = eq + 1;
  }
  if (!current_key.empty()) out[current_key] += body.substr(pos);
  for (auto& [k, v] : out) {
    // strip separators and whitespace at both ends
    const auto b = v.find_first_not_of(" ,");
    const auto e = v.find_last_not_of(" ,");
    v = b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  }
  return out;
}

int header_int(const std::map<std::string, std::string>& nl, const std::string& key, int line,
               std::optional<int> fallback = std::nullopt) {
  auto it = nl.find(key);
  if (it == nl.end()) {
    if (fallback) return *fallback;
    throw ParseError("FCIDUMP header lacks " + key, line);
  }
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("FCIDUMP header value " + key + "='" + it->second + "' is not an integer",
                     line);
  }
}

}  // namespace

ActiveSpaceHamiltonian read_fcidump(std::istream& in) {
  std::string raw;
  int line_no = 0;
  std::string header;
  bool started = false;
  bool ended = false;
  int header_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string up = upper(raw);
    if (!started) {
      if (up.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto at = up.find("&FCI");
      if (at == std::string::npos) throw ParseError("expected '&FCI' namelist header", line_no);
      started = true;
      header_line = line_no;
      up = up.substr(at + 4);
    }
    auto end = up.find("&END");
    if (end == std::string::npos) end = up.find('/');
    if (end != std::string::npos) {
      header += up.substr(0, end) + ' ';
      ended = true;
      break;
    }
    header += up + ' ';
  }
  if (!ended) throw ParseError("unterminated FCIDUMP header", started ? header_line : line_no);

  const auto nl = parse_namelist(header, header_line);
  ActiveSpaceHamiltonian h;
  h.n_orbitals = header_int(nl, "NORB", header_line);
  h.n_electrons = header_int(nl, "NELEC", header_line);
  h.ms2 = header_int(nl, "MS2", header_line, 0);
  if (h.n_orbitals <= 0) throw ParseError("NORB must be positive", header_line);
  if (h.n_electrons <= 0 || h.n_electrons > 2 * h.n_orbitals) {
    throw ParseError("NELEC inconsistent with NORB", header_line);
  }
  const int n = h.n_orbitals;
  h.h = Eigen::MatrixXd::Zero(n, n);
  h.eri = EriTensor(n);
  std::vector<char> seen1(static_cast<std::size_t>(n) * n, 0);
  std::vector<char> seen2(static_cast<std::size_t>(n) * n * n * n, 0);
  bool seen_core = false;

  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string line = raw;
    for (auto& ch : line)
      if (ch == 'D' || ch == 'd') ch = 'E';  // Fortran exponents
    std::istringstream row(line);
    double v = 0.0;
    long i = 0, j = 0, k = 0, l = 0;
    if (!(row >> v >> i >> j >> k >> l)) {
      throw ParseError("expected 'value i j k l'", line_no);
    }
    std::string extra;
    if (row >> extra) throw ParseError("trailing characters '" + extra + "'", line_no);
    if (!std::isfinite(v)) throw ParseError("non-finite integral value", line_no);
    for (long idx : {i, j, k, l}) {
      if (idx < 0 || idx > n) {
        throw ParseError("orbital index " + std::to_string(idx) + " outside 0.." +
                             std::to_string(n),
                         line_no);
      }
    }
    auto conflict = [&](double old) {
      if (std::abs(old - v) > kConflictTol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "value " << v << " conflicts with symmetry-equivalent entry " << old;
        throw ParseError(msg.str(), line_no);
      }
    };
    if (i > 0 && j > 0 && k > 0 && l > 0) {
      const int p = i - 1, q = j - 1, r = k - 1, s = l - 1;
      const std::size_t id = ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
      if (seen2[id]) conflict(h.eri(p, q, r, s));
      h.eri.set_symmetric(p, q, r, s, v);
      for (auto [a, b, c, d] : {std::array<int, 4>{p, q, r, s}, {q, p, r, s}, {p, q, s, r},
                                {q, p, s, r}, {r, s, p, q}, {s, r, p, q}, {r, s, q, p},
                                {s, r, q, p}})
        seen2[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d] = 1;
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      const int p = i - 1, q = j - 1;
      if (seen1[p * n + q]) conflict(h.h(p, q));
      h.h(p, q) = h.h(q, p) = v;
      seen1[p * n + q] = seen1[q * n + p] = 1;
    } else if (i == 0 && j == 0 && k == 0 && l == 0) {
      if (seen_core) conflict(h.e_core);
      h.e_core = v;
      seen_core = true;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // orbital energy: informational only
    } else {
      throw ParseError("index pattern " + std::to_string(i) + " " + std::to_string(j) + " " +
                           std::to_string(k) + " " + std::to_string(l) + " is not recognised",
                       line_no);
    }
  }
  return h;
}

ActiveSpaceHamiltonian read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open FCIDUMP file '" + path + "'");
  return read_fcidump(in);
}

void write_fcidump(const ActiveSpaceHamiltonian& h, std::ostream& out, double threshold) {
  const int n = h.n_orbitals;
  if (h.h.rows() != n || h.eri.dim() != n) throw DimensionMismatch("inconsistent Hamiltonian shape");
  out << " &FCI NORB=" << n << ",NELEC=" << h.n_electrons << ",MS2=" << h.ms2 << ",\n  ORBSYM=";
  for (int i = 0; i < n; ++i) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  char buf[96];
  auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%24.17e %4d %4d %4d %4d\n", v, i, j, k, l);
    out << buf;
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = h.eri(p, q, r, s);
          if (std::abs(v) > threshold || (threshold == 0.0 && v != 0.0))
            emit(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      const double v = h.h(p, q);
      if (std::abs(v) > threshold || (threshold == 0.0 && v != 0.0)) emit(v, p + 1, q + 1, 0, 0);
    }
  emit(h.e_core, 0, 0, 0, 0);
  if (!out) throw Error("failed writing FCIDUMP");
}

void write_fcidump(const ActiveSpaceHamiltonian& h, const std::string& path, double threshold) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot create FCIDUMP file '" + path + "'");
  write_fcidump(h, out, threshold);
}

}  // namespace conint::chem
