#include "conint/chem/basis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "conint/error.hpp"

namespace conint::chem {

namespace detail {
extern const std::string_view kSto3gText;
extern const std::string_view k631gText;
}  // namespace detail

namespace {

int l_from_letter(const std::string& letter, int line) {
  if (letter.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(letter[0]))) {
      case 'S': return 0;
      case 'P': return 1;
      case 'D': return 2;
      case 'F': return 3;
      case 'G': return 4;
      default: break;
    }
  }
  throw ParseError("unknown angular momentum letter '" + letter + "'", line);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

}  // namespace

BasisLibrary BasisLibrary::parse(std::string_view text, std::string name) {
  BasisLibrary lib;
  lib.name_ = std::move(name);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;

  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, raw)) {
      ++line_no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      out = raw;
      return true;
    }
    return false;
  };

  std::string line;
  while (next_content_line(line)) {
    std::istringstream hdr(line);
    std::string element, letter;
    int n_prim = 0;
    if (!(hdr >> element >> letter >> n_prim) || n_prim <= 0) {
      throw ParseError("expected '<element> <l> <n_prim>'", line_no);
    }
    ShellTemplate shell;
    shell.l = l_from_letter(letter, line_no);
    for (int i = 0; i < n_prim; ++i) {
      if (!next_content_line(line)) throw ParseError("unexpected end of basis file", line_no);
      std::istringstream row(line);
      Primitive p{};
      if (!(row >> p.exponent >> p.coefficient)) {
        throw ParseError("expected 'exponent coefficient'", line_no);
      }
      if (!(p.exponent > 0.0)) throw ParseError("non-positive exponent", line_no);
      shell.primitives.push_back(p);
    }
    lib.shells_[element].push_back(std::move(shell));
  }
  if (lib.shells_.empty()) throw ParseError("basis file defines no shells", 0);
  return lib;
}

BasisLibrary BasisLibrary::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open basis file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

const BasisLibrary& BasisLibrary::builtin(std::string_view name) {
  static const BasisLibrary sto3g = parse(detail::kSto3gText, "sto-3g");
  static const BasisLibrary g631 = parse(detail::k631gText, "6-31g");
  const std::string key = lower(name);
  if (key == "sto-3g" || key == "sto3g") return sto3g;
  if (key == "6-31g" || key == "631g") return g631;
  throw InvalidArgument("unknown built-in basis '" + std::string(name) + "'");
}

bool BasisLibrary::has_element(const std::string& element) const {
  return shells_.count(element) != 0;
}

const std::vector<ShellTemplate>& BasisLibrary::shells_for(const std::string& element) const {
  auto it = shells_.find(element);
  if (it == shells_.end()) {
    throw InvalidArgument("basis '" + name_ + "' has no shells for element " + element);
  }
  return it->second;
}

std::vector<std::array<int, 3>> cartesian_components(int l) {
  std::vector<std::array<int, 3>> out;
  for (int lx = l; lx >= 0; --lx) {
    for (int ly = l - lx; ly >= 0; --ly) out.push_back({lx, ly, l - lx - ly});
  }
  return out;
}

BasisSet::BasisSet(const Geometry& geometry, const BasisLibrary& library) {
  for (std::size_t a = 0; a < geometry.size(); ++a) {
    const auto& atom = geometry[a];
    const auto& templates = library.shells_for(atom.symbol);
    if (templates.empty()) {
      throw InvalidArgument("atom " + std::to_string(a) + " has no basis shells");
    }
    for (const auto& t : templates) {
      BasisShell s;
      s.center = static_cast<int>(a);
      s.l = t.l;
      s.origin = atom.position;
      s.primitives = t.primitives;
      // Primitive norms for the pure x^l component; for l <= 1 every
      // Cartesian component shares them.
      const double dfac = double_factorial(2 * t.l - 1);
      std::vector<double> c(t.primitives.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double al = t.primitives[i].exponent;
        c[i] = t.primitives[i].coefficient * std::pow(2.0 * al / std::numbers::pi, 0.75) *
               std::pow(4.0 * al, 0.5 * t.l) / std::sqrt(dfac);
      }
      double self = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) {
          const double p = t.primitives[i].exponent + t.primitives[j].exponent;
          self += c[i] * c[j] * std::pow(std::numbers::pi / p, 1.5) * dfac /
                  std::pow(2.0 * p, t.l);
        }
      }
      for (auto& v : c) v /= std::sqrt(self);
      s.normalized = std::move(c);
      offsets_.push_back(n_functions_);
      n_functions_ += s.n_functions();
      shells_.push_back(std::move(s));
    }
  }
}

int BasisSet::max_l() const {
  int l = 0;
  for (const auto& s : shells_) l = std::max(l, s.l);
  return l;
}

}  // namespace conint::chem
