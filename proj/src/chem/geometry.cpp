#include "conint/chem/geometry.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "conint/error.hpp"
#include "conint/units.hpp"

namespace conint::chem {

namespace {

struct ElementData {
  int charge;
  double mass;
};

const std::map<std::string, ElementData>& element_table() {
  static const std::map<std::string, ElementData> table = {
      {"H", {1, 1.00782503}},  {"He", {2, 4.00260325}}, {"Li", {3, 7.01600344}},
      {"Be", {4, 9.01218307}}, {"B", {5, 11.0093054}},  {"C", {6, 12.0}},
      {"N", {7, 14.0030740}},  {"O", {8, 15.9949146}},  {"F", {9, 18.9984032}},
      {"Ne", {10, 19.9924402}},
  };
  return table;
}

}  // namespace

int element_charge(const std::string& symbol) {
  auto it = element_table().find(symbol);
  if (it == element_table().end()) {
    throw InvalidArgument("unknown element symbol '" + symbol + "'");
  }
  return it->second.charge;
}

Atom make_atom(const std::string& symbol, const Eigen::Vector3d& position_angstrom) {
  auto it = element_table().find(symbol);
  if (it == element_table().end()) {
    throw InvalidArgument("unknown element symbol '" + symbol + "'");
  }
  return Atom{symbol, it->second.charge, position_angstrom * kBohrPerAngstrom,
              it->second.mass};
}

Geometry::Geometry(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InvalidArgument("geometry has no atoms");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].charge < 1) {
      throw InvalidArgument("atom " + std::to_string(i) + " has nuclear charge < 1");
    }
    if (!atoms_[i].position.allFinite()) {
      throw InvalidArgument("atom " + std::to_string(i) + " has a non-finite position");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((atoms_[i].position - atoms_[j].position).norm() < 1e-8) {
        throw InvalidArgument("atoms " + std::to_string(j) + " and " + std::to_string(i) +
                              " coincide");
      }
    }
  }
}

int Geometry::n_electrons() const {
  int n = 0;
  for (const auto& a : atoms_) n += a.charge;
  return n;
}

double Geometry::nuclear_repulsion() const {
  double e = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      e += atoms_[i].charge * atoms_[j].charge /
           (atoms_[i].position - atoms_[j].position).norm();
    }
  }
  return e;
}

Geometry Geometry::translated(const Eigen::Vector3d& shift) const {
  auto atoms = atoms_;
  for (auto& a : atoms) a.position += shift;
  return Geometry(std::move(atoms));
}

Geometry Geometry::rotated(const Eigen::Matrix3d& rotation) const {
  auto atoms = atoms_;
  for (auto& a : atoms) a.position = rotation * a.position;
  return Geometry(std::move(atoms));
}

std::string Geometry::to_xyz(const std::string& comment) const {
  std::ostringstream out;
  out << atoms_.size() << "\n" << comment << "\n";
  out << std::fixed << std::setprecision(10);
  for (const auto& a : atoms_) {
    const Eigen::Vector3d p = a.position / kBohrPerAngstrom;
    out << std::left << std::setw(3) << a.symbol << std::right << std::setw(18) << p.x()
        << std::setw(18) << p.y() << std::setw(18) << p.z() << "\n";
  }
  return out.str();
}

Geometry build_h2o_scaled(double scale, const WaterReference& ref) {
  if (!(scale > 0.0)) throw InvalidArgument("H2O scale factor must be positive");
  const double r = scale * ref.bond_length;
  const double half = deg_to_rad(ref.angle) / 2.0;
  return Geometry({make_atom("O", {0.0, 0.0, 0.0}),
                   make_atom("H", {r * std::sin(half), 0.0, r * std::cos(half)}),
                   make_atom("H", {-r * std::sin(half), 0.0, r * std::cos(half)})});
}

Geometry build_h2o_jacobi(double distance_g, const WaterJacobi& jacobi) {
  if (!(distance_g > 0.0)) throw InvalidArgument("Jacobi distance G must be positive");
  if (!(jacobi.hh_distance > 0.0)) throw InvalidArgument("Jacobi distance r must be positive");
  const double g = deg_to_rad(jacobi.gamma);
  const double h = jacobi.hh_distance / 2.0;
  return Geometry({make_atom("O", {distance_g * std::sin(g), 0.0, distance_g * std::cos(g)}),
                   make_atom("H", {0.0, 0.0, h}), make_atom("H", {0.0, 0.0, -h})});
}

Geometry build_ch2nh(double alpha, const MethanimineParams& params) {
  if (!(alpha > 0.0 && alpha < 360.0)) {
    throw InvalidArgument("CH2NH bending angle must lie in (0, 360) degrees");
  }
  // H-C-H in the xz plane, C-N along +z, N-H bent inside the yz plane.
  const double half = deg_to_rad(params.hch) / 2.0;
  const double a = deg_to_rad(alpha);
  const Eigen::Vector3d c(0.0, 0.0, 0.0);
  const Eigen::Vector3d n(0.0, 0.0, params.cn);
  const Eigen::Vector3d h1 = c + params.ch * Eigen::Vector3d(std::sin(half), 0.0, -std::cos(half));
  const Eigen::Vector3d h2 = c + params.ch * Eigen::Vector3d(-std::sin(half), 0.0, -std::cos(half));
  const Eigen::Vector3d h3 = n + params.nh * Eigen::Vector3d(0.0, std::sin(a), -std::cos(a));
  return Geometry({make_atom("C", c), make_atom("N", n), make_atom("H", h1), make_atom("H", h2),
                   make_atom("H", h3)});
}

}  // namespace conint::chem
