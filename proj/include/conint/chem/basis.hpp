#pragma once

#include <Eigen/Core>
#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "conint/chem/geometry.hpp"

namespace conint::chem {

struct Primitive {
  double exponent;     // Bohr^-2
  double coefficient;  // contraction coefficient, as tabulated
};

/// An element-level shell as it appears in a basis-set file.
struct ShellTemplate {
  int l = 0;
  std::vector<Primitive> primitives;
};

/// Basis-set definitions keyed by element symbol.
///
/// Text format: blocks of `<element> <l-letter> <n_prim>` followed by n_prim
/// lines of `exponent coefficient`. Blank lines and `#` comments are ignored.
class BasisLibrary {
 public:
  static BasisLibrary parse(std::string_view text, std::string name = {});
  static BasisLibrary load_file(const std::string& path);
  /// "sto-3g" or "6-31g" (case-insensitive), compiled into the library.
  static const BasisLibrary& builtin(std::string_view name);

  const std::string& name() const noexcept { return name_; }
  const std::vector<ShellTemplate>& shells_for(const std::string& element) const;
  bool has_element(const std::string& element) const;

 private:
  std::string name_;
  std::map<std::string, std::vector<ShellTemplate>> shells_;
};

/// A contracted Cartesian shell placed on an atom.
struct BasisShell {
  int center = 0;  // atom index
  int l = 0;
  Eigen::Vector3d origin;
  std::vector<Primitive> primitives;
  /// Coefficients with primitive and contraction normalisation folded in,
  /// valid for every Cartesian component of an s or p shell.
  std::vector<double> normalized;

  int n_functions() const { return (l + 1) * (l + 2) / 2; }
};

class BasisSet {
 public:
  BasisSet() = default;
  BasisSet(const Geometry& geometry, const BasisLibrary& library);

  const std::vector<BasisShell>& shells() const noexcept { return shells_; }
  /// First basis-function index of each shell.
  const std::vector<int>& offsets() const noexcept { return offsets_; }
  int n_functions() const noexcept { return n_functions_; }
  int max_l() const;

 private:
  std::vector<BasisShell> shells_;
  std::vector<int> offsets_;
  int n_functions_ = 0;
};

/// Cartesian exponents (lx, ly, lz) of the components of a shell, in the
/// order used for basis-function indices (x, y, z for p).
std::vector<std::array<int, 3>> cartesian_components(int l);

}  // namespace conint::chem
