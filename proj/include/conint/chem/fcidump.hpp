#pragma once

#include <iosfwd>
#include <string>

#include "conint/chem/active_space.hpp"

namespace conint::chem {

/// Molpro-style FCIDUMP: a `&FCI NORB=..,NELEC=..,MS2=.. &END` namelist
/// header followed by `value i j k l` lines with 1-based indices. Two-body
/// lines have all indices non-zero, one-body lines k = l = 0, the core energy
/// line all zeros. Orbital-energy lines (i 0 0 0) are accepted and ignored.
///
/// Any entry that conflicts with a previously read symmetry partner raises
/// ParseError, as do malformed headers and out-of-range indices.
ActiveSpaceHamiltonian read_fcidump(std::istream& in);
ActiveSpaceHamiltonian read_fcidump(const std::string& path);

/// Writes the symmetry-unique entries with 17 significant digits, so that a
/// read-back reproduces every value exactly. Entries below `threshold` in
/// magnitude are omitted.
void write_fcidump(const ActiveSpaceHamiltonian& h, std::ostream& out, double threshold = 0.0);
void write_fcidump(const ActiveSpaceHamiltonian& h, const std::string& path,
                   double threshold = 0.0);

}  // namespace conint::chem
