#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

namespace conint::chem {

struct Atom {
  std::string symbol;
  int charge = 0;              // nuclear charge Z
  Eigen::Vector3d position;    // Bohr
  double mass = 0.0;           // amu; carried for completeness, unused under Born-Oppenheimer
};

/// A neutral molecule. Construction validates Z >= 1 and distinct positions.
class Geometry {
 public:
  Geometry() = default;
  explicit Geometry(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }

  int n_electrons() const;
  double nuclear_repulsion() const;

  Geometry translated(const Eigen::Vector3d& shift) const;
  Geometry rotated(const Eigen::Matrix3d& rotation) const;

  /// XYZ file contents, coordinates in Angstrom.
  std::string to_xyz(const std::string& comment = {}) const;

 private:
  std::vector<Atom> atoms_;
};

/// Atom from an element symbol and a position given in Angstrom.
Atom make_atom(const std::string& symbol, const Eigen::Vector3d& position_angstrom);
int element_charge(const std::string& symbol);

struct WaterReference {
  double bond_length = 0.9584;  // Angstrom
  double angle = 104.45;        // degrees
};

/// H2O with both O-H bonds scaled by `scale` at a fixed H-O-H angle.
Geometry build_h2o_scaled(double scale, const WaterReference& ref = {});

struct WaterJacobi {
  double hh_distance = 2.5832;  // r, Angstrom
  double gamma = 0.00021;       // degrees
};

/// H2O in Jacobi coordinates: the H atoms sit at +-r/2 on the z axis and O is
/// placed a distance G (Angstrom) from their barycenter, tilted by gamma from
/// the H-H axis. gamma = 90 gives a C2v structure.
Geometry build_h2o_jacobi(double distance_g, const WaterJacobi& jacobi = {});

struct MethanimineParams {
  double cn = 1.27;     // Angstrom
  double ch = 1.09;     // Angstrom
  double nh = 1.02;     // Angstrom
  double hch = 116.0;   // degrees
};

/// CH2NH with the C-N-H plane perpendicular to the H-C-H plane. `alpha` is
/// the C-N-H bending angle in degrees; alpha = 180 makes N-H collinear with
/// the C-N bond.
Geometry build_ch2nh(double alpha, const MethanimineParams& params = {});

}  // namespace conint::chem
