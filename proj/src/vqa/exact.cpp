#include <numeric>

#include "conint/error.hpp"
#include "conint/fq/fermion.hpp"
#include "conint/vqa/vqa.hpp"

namespace conint::vqa {

std::vector<sim::SectorConstraint> particle_sector(int n_orbitals, int n_alpha, int n_beta,
                                                   fq::MappingKind mapping) {
  if (n_orbitals < 1) throw InvalidArgument("need at least one orbital");
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orbitals || n_beta > n_orbitals) {
    throw InvalidArgument("particle counts out of range for the orbital count");
  }
  const int n_modes = 2 * n_orbitals;
  std::vector<int> alpha(static_cast<std::size_t>(n_orbitals)), beta(alpha.size());
  std::iota(alpha.begin(), alpha.end(), 0);
  std::iota(beta.begin(), beta.end(), n_orbitals);
  const fq::MappingScheme scheme{mapping, n_alpha, n_beta};
  return {
      {fq::map_operator(fq::number_operator(n_modes, alpha), scheme), static_cast<double>(n_alpha)},
      {fq::map_operator(fq::number_operator(n_modes, beta), scheme), static_cast<double>(n_beta)},
  };
}

fq::PauliOperator qubit_hamiltonian(const chem::ActiveSpaceHamiltonian& h,
                                    fq::MappingKind mapping) {
  h.validate();
  return fq::map_operator(fq::second_quantize(h), {mapping, h.n_alpha(), h.n_beta()});
}

std::vector<double> exact_spectrum(const chem::ActiveSpaceHamiltonian& h, int k,
                                   fq::MappingKind mapping, const sim::EigenOptions& options) {
  const auto op = qubit_hamiltonian(h, mapping);
  return sim::lowest_eigenvalues(op, k, particle_sector(h.n_orbitals, h.n_alpha(), h.n_beta(), mapping),
                                 options);
}

std::vector<double> exact_spectrum(const fq::PauliOperator& h, int k,
                                   const std::vector<sim::SectorConstraint>& sector,
                                   const sim::EigenOptions& options) {
  if (k < 1) throw InvalidArgument("exact_spectrum needs k >= 1");
  return sim::lowest_eigenvalues(h, k, sector, options);
}

}  // namespace conint::vqa
