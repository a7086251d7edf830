#include "conint/fq/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conint/error.hpp"

namespace conint::fq {

FermionOperator FermionOperator::identity(int n_modes, cplx coeff) {
  FermionOperator op(n_modes);
  op.add_term(coeff, {});
  return op;
}

void FermionOperator::check_modes(const LadderString& ops) const {
  for (const auto& l : ops) {
    if (l.mode < 0 || l.mode >= n_modes_) {
      throw InvalidArgument("fermion mode " + std::to_string(l.mode) + " out of range [0, " +
                            std::to_string(n_modes_) + ")");
    }
  }
}

void FermionOperator::add_term(cplx coeff, LadderString ops) {
  check_modes(ops);
  terms_[std::move(ops)] += coeff;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out(n_modes_);
  for (const auto& [ops, c] : terms_) {
    LadderString rev(ops.rbegin(), ops.rend());
    for (auto& l : rev) l.dagger = !l.dagger;
    out.terms_[std::move(rev)] += std::conj(c);
  }
  return out;
}

namespace {

bool normal_before(const Ladder& a, const Ladder& b) {
  // true when a must stand left of b in normal order
  if (a.dagger != b.dagger) return a.dagger;
  return a.mode > b.mode;
}

// Expands one product into normal-ordered terms via adjacent transpositions.
void normal_order_term(cplx coeff, LadderString ops, std::map<LadderString, cplx>& out) {
  std::vector<std::pair<cplx, LadderString>> stack;
  stack.emplace_back(coeff, std::move(ops));
  while (!stack.empty()) {
    auto [c, cur] = std::move(stack.back());
    stack.pop_back();
    bool changed = true;
    bool zero = false;
    while (changed && !zero) {
      changed = false;
      for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
        const Ladder a = cur[i], b = cur[i + 1];
        if (a.dagger == b.dagger && a.mode == b.mode) {
          zero = true;  // a a = a+ a+ = 0
          break;
        }
        if (normal_before(b, a)) {
          // a b = -b a + {a, b}; the anticommutator is delta when a = a_p, b = a+_p.
          if (!a.dagger && b.dagger && a.mode == b.mode) {
            LadderString contracted;
            contracted.reserve(cur.size() - 2);
            contracted.insert(contracted.end(), cur.begin(), cur.begin() + i);
            contracted.insert(contracted.end(), cur.begin() + i + 2, cur.end());
            stack.emplace_back(c, std::move(contracted));
          }
          std::swap(cur[i], cur[i + 1]);
          c = -c;
          changed = true;
        }
      }
    }
    if (!zero) out[std::move(cur)] += c;
  }
}

}  // namespace

FermionOperator FermionOperator::normal_ordered(double tol) const {
  FermionOperator out(n_modes_);
  for (const auto& [ops, c] : terms_) normal_order_term(c, ops, out.terms_);
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    if (std::abs(it->second) <= tol) it = out.terms_.erase(it);
    else ++it;
  }
  return out;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  n_modes_ = std::max(n_modes_, other.n_modes_);
  for (const auto& [ops, c] : other.terms_) terms_[ops] += c;
  return *this;
}

FermionOperator& FermionOperator::operator*=(cplx s) {
  for (auto& [ops, c] : terms_) c *= s;
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out(std::max(a.n_modes_, b.n_modes_));
  for (const auto& [oa, ca] : a.terms_)
    for (const auto& [ob, cb] : b.terms_) {
      LadderString ops = oa;
      ops.insert(ops.end(), ob.begin(), ob.end());
      out.terms_[std::move(ops)] += ca * cb;
    }
  return out;
}

double FermionOperator::hermiticity_error() const {
  const auto a = normal_ordered();
  const auto b = adjoint().normal_ordered();
  double err = 0.0;
  for (const auto& [ops, c] : a.terms_) {
    auto it = b.terms_.find(ops);
    err = std::max(err, std::abs(c - (it == b.terms_.end() ? 0.0 : it->second)));
  }
  for (const auto& [ops, c] : b.terms_) {
    if (!a.terms_.count(ops)) err = std::max(err, std::abs(c));
  }
  return err;
}

std::string FermionOperator::to_string() const {
  std::ostringstream out;
  out.precision(12);
  for (const auto& [ops, c] : terms_) {
    out << '(' << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    for (const auto& l : ops) out << ' ' << l.mode << (l.dagger ? "^" : "");
    out << '\n';
  }
  return out.str();
}

FermionOperator second_quantize(const chem::ActiveSpaceHamiltonian& h) {
  const int n = h.n_orbitals;
  if (h.h.rows() != n || h.eri.dim() != n) {
    throw DimensionMismatch("active-space integral shapes disagree with n_orbitals");
  }
  FermionOperator op(2 * n);
  if (h.e_core != 0.0) op.add_term(h.e_core, {});
  for (int spin = 0; spin < 2; ++spin) {
    const int off = spin * n;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (h.h(p, q) == 0.0) continue;
        op.add_term(h.h(p, q), {{p + off, true}, {q + off, false}});
      }
  }
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
              const double v = h.eri(p, q, r, s);
              if (v == 0.0) continue;
              const int mp = p + s1 * n, mq = q + s1 * n;
              const int mr = r + s2 * n, ms = s + s2 * n;
              if (mp == mr || mq == ms) continue;
              op.add_term(0.5 * v, {{mp, true}, {mr, true}, {ms, false}, {mq, false}});
            }
  return op;
}

FermionOperator number_operator(int n_modes, const std::vector<int>& modes) {
  FermionOperator op(n_modes);
  for (int m : modes) op.add_term(1.0, {{m, true}, {m, false}});
  return op;
}

}  // namespace conint::fq
