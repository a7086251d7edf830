// Port of M.J.D. Powell's COBYLA (routines COBYLB and TRSTLP). The control
// flow follows the original labels closely so the two can be compared line
// by line; arrays are 1-based through the small Mat/Vec helpers below.

#include <algorithm>
#include <cmath>
#include <limits>

#include "conint/opt/optimizer.hpp"

namespace conint::opt {

namespace {

struct Vec {
  std::vector<double> d;
  explicit Vec(int n) : d(static_cast<std::size_t>(n) + 1, 0.0) {}
  double& operator()(int i) { return d[static_cast<std::size_t>(i)]; }
};

struct IVec {
  std::vector<int> d;
  explicit IVec(int n) : d(static_cast<std::size_t>(n) + 1, 0) {}
  int& operator()(int i) { return d[static_cast<std::size_t>(i)]; }
};

struct Mat {
  int rows;
  std::vector<double> d;
  Mat(int r, int c) : rows(r), d(static_cast<std::size_t>(r) * c, 0.0) {}
  double& operator()(int i, int j) {
    return d[static_cast<std::size_t>(i - 1) + static_cast<std::size_t>(j - 1) * rows];
  }
};

// Solves the linear-programming trust-region subproblem. A holds the
// constraint gradients in columns 1..m and minus the objective gradient in
// column m+1; B the constraint right-hand sides. Returns ifull.
int trstlp(int n, int m, Mat& a, Vec& b, double rho, Vec& dx, IVec& iact) {
  Mat z(n, n);
  Vec zdota(n + 1), vmultc(m + 1), sdirn(n), dxnew(n), vmultd(m + 1);
  int ifull = 1;
  int mcon = m;
  int nact = 0;
  double resmax = 0.0;
  int icon = 0;
  double resold = 0.0;
  double optold = 0.0, optnew = 0.0;
  int nactx = 0, icount = 0;
  int kk = 0, iout = 0;
  double step = 0.0, stpful = 0.0;

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) z(i, j) = 0.0;
    z(i, i) = 1.0;
    dx(i) = 0.0;
  }
  if (m >= 1) {
    for (int k = 1; k <= m; ++k) {
      if (b(k) > resmax) {
        resmax = b(k);
        icon = k;
      }
    }
    for (int k = 1; k <= m; ++k) {
      iact(k) = k;
      vmultc(k) = resmax - b(k);
    }
  }
  if (resmax == 0.0) goto L480;
  for (int i = 1; i <= n; ++i) sdirn(i) = 0.0;

// End the current stage if 3 consecutive iterations have neither reduced the
// best objective value nor increased the number of active constraints.
L60:
  optold = 0.0;
  icount = 0;
L70:
  if (mcon == m) {
    optnew = resmax;
  } else {
    optnew = 0.0;
    for (int i = 1; i <= n; ++i) optnew -= dx(i) * a(i, mcon);
  }
  if (icount == 0 || optnew < optold) {
    optold = optnew;
    nactx = nact;
    icount = 3;
  } else if (nact > nactx) {
    nactx = nact;
    icount = 3;
  } else {
    --icount;
    if (icount == 0) goto L490;
  }

  // If icon exceeds nact, add constraint iact(icon) to the active set.
  if (icon <= nact) goto L260;
  {
    kk = iact(icon);
    for (int i = 1; i <= n; ++i) dxnew(i) = a(i, kk);
    double tot = 0.0;
    for (int k = n; k > nact; --k) {
      double sp = 0.0, spabs = 0.0;
      for (int i = 1; i <= n; ++i) {
        const double temp = z(i, k) * dxnew(i);
        sp += temp;
        spabs += std::abs(temp);
      }
      const double acca = spabs + 0.1 * std::abs(sp);
      const double accb = spabs + 0.2 * std::abs(sp);
      if (spabs >= acca || acca >= accb) sp = 0.0;
      if (tot == 0.0) {
        tot = sp;
      } else {
        const int kp = k + 1;
        const double temp = std::sqrt(sp * sp + tot * tot);
        const double alpha = sp / temp;
        const double beta = tot / temp;
        tot = temp;
        for (int i = 1; i <= n; ++i) {
          const double t2 = alpha * z(i, k) + beta * z(i, kp);
          z(i, kp) = alpha * z(i, kp) - beta * z(i, k);
          z(i, k) = t2;
        }
      }
    }

    if (tot != 0.0) {
      ++nact;
      zdota(nact) = tot;
      vmultc(icon) = vmultc(nact);
      vmultc(nact) = 0.0;
      goto L210;
    }

    // The new gradient is a combination of the active ones: find the
    // multipliers and the constraint to drop.
    double ratio = -1.0;
    for (int k = nact; k >= 1; --k) {
      double zdotv = 0.0, zdvabs = 0.0;
      for (int i = 1; i <= n; ++i) {
        const double temp = z(i, k) * dxnew(i);
        zdotv += temp;
        zdvabs += std::abs(temp);
      }
      const double acca = zdvabs + 0.1 * std::abs(zdotv);
      const double accb = zdvabs + 0.2 * std::abs(zdotv);
      if (zdvabs < acca && acca < accb) {
        const double temp = zdotv / zdota(k);
        if (temp > 0.0 && iact(k) <= m) {
          const double tempa = vmultc(k) / temp;
          if (ratio < 0.0 || tempa < ratio) {
            ratio = tempa;
            iout = k;
          }
        }
        if (k >= 2) {
          const int kw = iact(k);
          for (int i = 1; i <= n; ++i) dxnew(i) -= temp * a(i, kw);
        }
        vmultd(k) = temp;
      } else {
        vmultd(k) = 0.0;
      }
    }
    if (ratio < 0.0) goto L490;

    // Revise the multipliers and move the constraint to be replaced to the end.
    for (int k = 1; k <= nact; ++k) vmultc(k) = std::max(0.0, vmultc(k) - ratio * vmultd(k));
    if (iout < nact) {
      const int isave = iact(iout);
      const double vsave = vmultc(iout);
      int k = iout;
      do {
        const int kp = k + 1;
        const int kw = iact(kp);
        double sp = 0.0;
        for (int i = 1; i <= n; ++i) sp += z(i, k) * a(i, kw);
        const double temp = std::sqrt(sp * sp + zdota(kp) * zdota(kp));
        const double alpha = zdota(kp) / temp;
        const double beta = sp / temp;
        zdota(kp) = alpha * zdota(k);
        zdota(k) = temp;
        for (int i = 1; i <= n; ++i) {
          const double t2 = alpha * z(i, kp) + beta * z(i, k);
          z(i, kp) = alpha * z(i, k) - beta * z(i, kp);
          z(i, k) = t2;
        }
        iact(k) = kw;
        vmultc(k) = vmultc(kp);
        k = kp;
      } while (k < nact);
      iact(k) = isave;
      vmultc(k) = vsave;
    }
    double temp = 0.0;
    for (int i = 1; i <= n; ++i) temp += z(i, nact) * a(i, kk);
    if (temp == 0.0) goto L490;
    zdota(nact) = temp;
    vmultc(icon) = 0.0;
    vmultc(nact) = ratio;
  }

  // Update iact; keep the objective as the last active constraint when mcon > m.
L210:
  iact(icon) = iact(nact);
  iact(nact) = kk;
  if (mcon > m && kk != mcon) {
    const int k = nact - 1;
    double sp = 0.0;
    for (int i = 1; i <= n; ++i) sp += z(i, k) * a(i, kk);
    const double temp = std::sqrt(sp * sp + zdota(nact) * zdota(nact));
    const double alpha = zdota(nact) / temp;
    const double beta = sp / temp;
    zdota(nact) = alpha * zdota(k);
    zdota(k) = temp;
    for (int i = 1; i <= n; ++i) {
      const double t2 = alpha * z(i, nact) + beta * z(i, k);
      z(i, nact) = alpha * z(i, k) - beta * z(i, nact);
      z(i, k) = t2;
    }
    iact(nact) = iact(k);
    iact(k) = kk;
    std::swap(vmultc(k), vmultc(nact));
  }

  // In stage one, set sdirn to the direction of the next change.
  if (mcon > m) goto L320;
  {
    kk = iact(nact);
    double temp = 0.0;
    for (int i = 1; i <= n; ++i) temp += sdirn(i) * a(i, kk);
    temp -= 1.0;
    temp /= zdota(nact);
    for (int i = 1; i <= n; ++i) sdirn(i) -= temp * z(i, nact);
  }
  goto L340;

  // Delete constraint iact(icon) from the active set.
L260:
  if (icon < nact) {
    const int isave = iact(icon);
    const double vsave = vmultc(icon);
    int k = icon;
    do {
      const int kp = k + 1;
      kk = iact(kp);
      double sp = 0.0;
      for (int i = 1; i <= n; ++i) sp += z(i, k) * a(i, kk);
      const double temp = std::sqrt(sp * sp + zdota(kp) * zdota(kp));
      const double alpha = zdota(kp) / temp;
      const double beta = sp / temp;
      zdota(kp) = alpha * zdota(k);
      zdota(k) = temp;
      for (int i = 1; i <= n; ++i) {
        const double t2 = alpha * z(i, kp) + beta * z(i, k);
        z(i, kp) = alpha * z(i, k) - beta * z(i, kp);
        z(i, k) = t2;
      }
      iact(k) = kk;
      vmultc(k) = vmultc(kp);
      k = kp;
    } while (k < nact);
    iact(k) = isave;
    vmultc(k) = vsave;
  }
  --nact;
  if (mcon > m) goto L320;
  {
    double temp = 0.0;
    for (int i = 1; i <= n; ++i) temp += sdirn(i) * z(i, nact + 1);
    for (int i = 1; i <= n; ++i) sdirn(i) -= temp * z(i, nact + 1);
  }
  goto L340;

  // Pick the next search direction of stage two.
L320:
  {
    const double temp = 1.0 / zdota(nact);
    for (int i = 1; i <= n; ++i) sdirn(i) = temp * z(i, nact);
  }

  // Step to the trust-region boundary, or the step that reduces resmax to zero.
L340:
  {
    double dd = rho * rho, sd = 0.0, ss = 0.0;
    for (int i = 1; i <= n; ++i) {
      if (std::abs(dx(i)) >= 1e-6 * rho) dd -= dx(i) * dx(i);
      sd += dx(i) * sdirn(i);
      ss += sdirn(i) * sdirn(i);
    }
    if (dd <= 0.0) goto L490;
    double temp = std::sqrt(ss * dd);
    if (std::abs(sd) >= 1e-6 * temp) temp = std::sqrt(ss * dd + sd * sd);
    stpful = dd / (temp + sd);
    step = stpful;
    if (mcon == m) {
      const double acca = step + 0.1 * resmax;
      const double accb = step + 0.2 * resmax;
      if (step >= acca || acca >= accb) goto L480;
      step = std::min(step, resmax);
    }

    for (int i = 1; i <= n; ++i) dxnew(i) = dx(i) + step * sdirn(i);
    if (mcon == m) {
      resold = resmax;
      resmax = 0.0;
      for (int k = 1; k <= nact; ++k) {
        const int kq = iact(k);
        double t2 = b(kq);
        for (int i = 1; i <= n; ++i) t2 -= a(i, kq) * dxnew(i);
        resmax = std::max(resmax, t2);
      }
    }

    // Multipliers that would hold if dx became dxnew.
    for (int k = nact; k >= 1; --k) {
      double zdotw = 0.0, zdwabs = 0.0;
      for (int i = 1; i <= n; ++i) {
        const double t2 = z(i, k) * dxnew(i);
        zdotw += t2;
        zdwabs += std::abs(t2);
      }
      const double acca = zdwabs + 0.1 * std::abs(zdotw);
      const double accb = zdwabs + 0.2 * std::abs(zdotw);
      if (zdwabs >= acca || acca >= accb) zdotw = 0.0;
      vmultd(k) = zdotw / zdota(k);
      if (k >= 2) {
        const int kq = iact(k);
        for (int i = 1; i <= n; ++i) dxnew(i) -= vmultd(k) * a(i, kq);
      }
    }
    if (mcon > m) vmultd(nact) = std::max(0.0, vmultd(nact));

    // Residuals of the inactive constraints complete vmultd.
    for (int i = 1; i <= n; ++i) dxnew(i) = dx(i) + step * sdirn(i);
    if (mcon > nact) {
      for (int k = nact + 1; k <= mcon; ++k) {
        const int kq = iact(k);
        double sum = resmax - b(kq);
        double sumabs = resmax + std::abs(b(kq));
        for (int i = 1; i <= n; ++i) {
          const double t2 = a(i, kq) * dxnew(i);
          sum += t2;
          sumabs += std::abs(t2);
        }
        const double acca = sumabs + 0.1 * std::abs(sum);
        const double accb = sumabs + 0.2 * std::abs(sum);
        if (sumabs >= acca || acca >= accb) sum = 0.0;
        vmultd(k) = sum;
      }
    }

    // Fraction of the step from dx to dxnew that is taken.
    double ratio = 1.0;
    icon = 0;
    for (int k = 1; k <= mcon; ++k) {
      if (vmultd(k) < 0.0) {
        const double t2 = vmultc(k) / (vmultc(k) - vmultd(k));
        if (t2 < ratio) {
          ratio = t2;
          icon = k;
        }
      }
    }

    const double t3 = 1.0 - ratio;
    for (int i = 1; i <= n; ++i) dx(i) = t3 * dx(i) + ratio * dxnew(i);
    for (int k = 1; k <= mcon; ++k) vmultc(k) = std::max(0.0, t3 * vmultc(k) + ratio * vmultd(k));
    if (mcon == m) resmax = resold + ratio * (resmax - resold);

    if (icon > 0) goto L70;
    if (step == stpful) return ifull;
  }
L480:
  mcon = m + 1;
  icon = mcon;
  iact(mcon) = mcon;
  vmultc(mcon) = 0.0;
  goto L60;

  // Use remaining freedom to reduce the objective before returning a short dx.
L490:
  if (mcon == m) goto L480;
  ifull = 0;
  return ifull;
}

}  // namespace

OptResult cobyla_minimize(const Objective& objective, const std::vector<ConstraintFn>& constraints,
                          std::vector<double> x0, const COBYLAConfig& cfg) {
  const int n = static_cast<int>(x0.size());
  const int m = static_cast<int>(constraints.size());
  if (n == 0) throw InvalidArgument("COBYLA needs at least one variable");
  if (!(cfg.rhobeg > cfg.rhoend && cfg.rhoend > 0.0)) {
    throw InvalidArgument("COBYLA requires rhobeg > rhoend > 0");
  }
  if (cfg.max_evaluations < n + 2) throw InvalidArgument("COBYLA needs max_evaluations >= n + 2");

  const int np = n + 1, mp = m + 1, mpp = m + 2;
  const double alpha = 0.25, beta = 2.1, gamma = 0.5, delta = 1.1;

  Mat sim(n, np), simi(n, n), datmat(mpp, np), a(n, mp);
  Vec x(n), con(mpp), vsig(n), veta(n), sigbar(n), dx(n);
  IVec iact(mp);
  for (int i = 1; i <= n; ++i) x(i) = x0[static_cast<std::size_t>(i - 1)];

  OptResult res;
  std::vector<double> xv(static_cast<std::size_t>(n));
  bool have_feasible = false;
  double best_f = INFINITY, best_viol = 0.0, least_viol = INFINITY, least_viol_f = INFINITY;
  std::vector<double> best_x, least_x;

  double f = 0.0, resmax = 0.0;
  auto calcfc = [&]() {
    for (int i = 1; i <= n; ++i) xv[static_cast<std::size_t>(i - 1)] = x(i);
    f = objective(xv);
    ++res.evaluations;
    if (!std::isfinite(f)) {
      res.x = xv;
      throw OptimizationError("COBYLA: objective returned a non-finite value", res);
    }
    resmax = 0.0;
    for (int k = 1; k <= m; ++k) {
      con(k) = constraints[static_cast<std::size_t>(k - 1)](xv);
      if (!std::isfinite(con(k))) {
        res.x = xv;
        throw OptimizationError("COBYLA: constraint returned a non-finite value", res);
      }
      resmax = std::max(resmax, -con(k));
    }
    double nrm = 0.0;
    for (double v : xv) nrm += v * v;
    res.history.push_back({res.evaluations, f, std::sqrt(nrm)});
    if (resmax <= cfg.feasibility_tol) {
      if (!have_feasible || f < best_f) {
        best_f = f;
        best_viol = resmax;
        best_x = xv;
      }
      have_feasible = true;
    }
    if (resmax < least_viol || (resmax == least_viol && f < least_viol_f)) {
      least_viol = resmax;
      least_viol_f = f;
      least_x = xv;
    }
  };

  double rho = cfg.rhobeg;
  double parmu = 0.0;
  int nfvals = 0;
  int ibrnch = 0, iflag = 0, ifull = 0;
  double parsig = 0.0, pareta = 0.0, prerec = 0.0, prerem = 0.0;
  int jdrop = np;
  Termination reason = Termination::Converged;

  {
    const double temp = 1.0 / rho;
    for (int i = 1; i <= n; ++i) {
      sim(i, np) = x(i);
      for (int j = 1; j <= n; ++j) {
        sim(i, j) = 0.0;
        simi(i, j) = 0.0;
      }
      sim(i, i) = rho;
      simi(i, i) = temp;
    }
  }

L40:
  if (nfvals >= cfg.max_evaluations && nfvals > 0) {
    reason = Termination::MaxIterations;
    goto L600;
  }
  ++nfvals;
  calcfc();
  con(mp) = f;
  con(mpp) = resmax;
  if (ibrnch == 1) goto L440;

  // Store the new values in the column of the vertex just evaluated.
  for (int k = 1; k <= mpp; ++k) datmat(k, jdrop) = con(k);
  if (nfvals > np) goto L130;

  // Building the initial simplex: swap the new vertex with the optimal one
  // if necessary, then pick the next vertex.
  if (jdrop <= n) {
    if (datmat(mp, np) <= f) {
      x(jdrop) = sim(jdrop, np);
    } else {
      sim(jdrop, np) = x(jdrop);
      for (int k = 1; k <= mpp; ++k) {
        datmat(k, jdrop) = datmat(k, np);
        datmat(k, np) = con(k);
      }
      for (int k = 1; k <= jdrop; ++k) {
        sim(jdrop, k) = -rho;
        double temp = 0.0;
        for (int i = k; i <= jdrop; ++i) temp -= simi(i, k);
        simi(jdrop, k) = temp;
      }
    }
  }
  if (nfvals <= n) {
    jdrop = nfvals;
    x(jdrop) += rho;
    goto L40;
  }
L130:
  ibrnch = 1;

  // Identify the optimal vertex of the current simplex.
L140:
  {
    double phimin = datmat(mp, np) + parmu * datmat(mpp, np);
    int nbest = np;
    for (int j = 1; j <= n; ++j) {
      const double temp = datmat(mp, j) + parmu * datmat(mpp, j);
      if (temp < phimin) {
        nbest = j;
        phimin = temp;
      } else if (temp == phimin && parmu == 0.0) {
        if (datmat(mpp, j) < datmat(mpp, nbest)) nbest = j;
      }
    }

    // Move the best vertex into pole position, updating sim, simi, datmat.
    if (nbest <= n) {
      for (int i = 1; i <= mpp; ++i) std::swap(datmat(i, np), datmat(i, nbest));
      for (int i = 1; i <= n; ++i) {
        const double temp = sim(i, nbest);
        sim(i, nbest) = 0.0;
        sim(i, np) += temp;
        double tempa = 0.0;
        for (int k = 1; k <= n; ++k) {
          sim(i, k) -= temp;
          tempa -= simi(k, i);
        }
        simi(nbest, i) = tempa;
      }
    }

    // Give up if simi has drifted from the inverse of sim.
    double error = 0.0;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        double temp = i == j ? -1.0 : 0.0;
        for (int k = 1; k <= n; ++k) temp += simi(i, k) * sim(k, j);
        error = std::max(error, std::abs(temp));
      }
    if (error > 0.1) {
      reason = Termination::Stagnation;
      goto L600;
    }

    // Linear models: constraint gradients, then minus the objective gradient.
    for (int k = 1; k <= mp; ++k) {
      con(k) = -datmat(k, np);
      Vec w(n);
      for (int j = 1; j <= n; ++j) w(j) = datmat(k, j) + con(k);
      for (int i = 1; i <= n; ++i) {
        double temp = 0.0;
        for (int j = 1; j <= n; ++j) temp += w(j) * simi(j, i);
        if (k == mp) temp = -temp;
        a(i, k) = temp;
      }
    }

    // Simplex acceptability.
    iflag = 1;
    parsig = alpha * rho;
    pareta = beta * rho;
    for (int j = 1; j <= n; ++j) {
      double wsig = 0.0, weta = 0.0;
      for (int i = 1; i <= n; ++i) {
        wsig += simi(j, i) * simi(j, i);
        weta += sim(i, j) * sim(i, j);
      }
      vsig(j) = 1.0 / std::sqrt(wsig);
      veta(j) = std::sqrt(weta);
      if (vsig(j) < parsig || veta(j) > pareta) iflag = 0;
    }

    // If a new vertex is needed to improve acceptability, choose the vertex to drop.
    if (ibrnch == 1 || iflag == 1) goto L370;
    jdrop = 0;
    double temp = pareta;
    for (int j = 1; j <= n; ++j) {
      if (veta(j) > temp) {
        jdrop = j;
        temp = veta(j);
      }
    }
    if (jdrop == 0) {
      for (int j = 1; j <= n; ++j) {
        if (vsig(j) < temp) {
          jdrop = j;
          temp = vsig(j);
        }
      }
    }

    // Step to the new vertex and its sign.
    temp = gamma * rho * vsig(jdrop);
    for (int i = 1; i <= n; ++i) dx(i) = temp * simi(jdrop, i);
    double cvmaxp = 0.0, cvmaxm = 0.0, sum = 0.0;
    for (int k = 1; k <= mp; ++k) {
      sum = 0.0;
      for (int i = 1; i <= n; ++i) sum += a(i, k) * dx(i);
      if (k < mp) {
        const double t2 = datmat(k, np);
        cvmaxp = std::max(cvmaxp, -sum - t2);
        cvmaxm = std::max(cvmaxm, sum - t2);
      }
    }
    const double dxsign = parmu * (cvmaxp - cvmaxm) > sum + sum ? -1.0 : 1.0;

    temp = 0.0;
    for (int i = 1; i <= n; ++i) {
      dx(i) *= dxsign;
      sim(i, jdrop) = dx(i);
      temp += simi(jdrop, i) * dx(i);
    }
    for (int i = 1; i <= n; ++i) simi(jdrop, i) /= temp;
    for (int j = 1; j <= n; ++j) {
      if (j != jdrop) {
        double t2 = 0.0;
        for (int i = 1; i <= n; ++i) t2 += simi(j, i) * dx(i);
        for (int i = 1; i <= n; ++i) simi(j, i) -= t2 * simi(jdrop, i);
      }
    }
    for (int j = 1; j <= n; ++j) x(j) = sim(j, np) + dx(j);
    goto L40;
  }

  // Trust-region step from the pole vertex.
L370:
  {
    ifull = trstlp(n, m, a, con, rho, dx, iact);
    if (ifull == 0) {
      double temp = 0.0;
      for (int i = 1; i <= n; ++i) temp += dx(i) * dx(i);
      if (temp < 0.25 * rho * rho) {
        ibrnch = 1;
        goto L550;
      }
    }

    // Predicted change of f and of the maximum violation.
    double resnew = 0.0, sum = 0.0;
    con(mp) = 0.0;
    for (int k = 1; k <= mp; ++k) {
      sum = con(k);
      for (int i = 1; i <= n; ++i) sum -= a(i, k) * dx(i);
      if (k < mp) resnew = std::max(resnew, sum);
    }

    // Increase parmu if necessary; branch back if that changes the optimal vertex.
    double barmu = 0.0;
    prerec = datmat(mpp, np) - resnew;
    if (prerec > 0.0) barmu = sum / prerec;
    if (parmu < 1.5 * barmu) {
      parmu = 2.0 * barmu;
      const double phi = datmat(mp, np) + parmu * datmat(mpp, np);
      for (int j = 1; j <= n; ++j) {
        const double temp = datmat(mp, j) + parmu * datmat(mpp, j);
        if (temp < phi) goto L140;
        if (temp == phi && parmu == 0.0) {
          if (datmat(mpp, j) < datmat(mpp, np)) goto L140;
        }
      }
    }
    prerem = parmu * prerec - sum;

    for (int i = 1; i <= n; ++i) x(i) = sim(i, np) + dx(i);
    ibrnch = 1;
    goto L40;
  }

L440:
  {
    const double vmold = datmat(mp, np) + parmu * datmat(mpp, np);
    const double vmnew = f + parmu * resmax;
    double trured = vmold - vmnew;
    if (parmu == 0.0 && f == datmat(mp, np)) {
      prerem = prerec;
      trured = datmat(mpp, np) - resmax;
    }

    // Decide which vertex (if any) x replaces; mandatory when trured > 0.
    double ratio = trured <= 0.0 ? 1.0 : 0.0;
    jdrop = 0;
    for (int j = 1; j <= n; ++j) {
      double temp = 0.0;
      for (int i = 1; i <= n; ++i) temp += simi(j, i) * dx(i);
      temp = std::abs(temp);
      if (temp > ratio) {
        jdrop = j;
        ratio = temp;
      }
      sigbar(j) = temp * vsig(j);
    }

    double edgmax = delta * rho;
    int l = 0;
    for (int j = 1; j <= n; ++j) {
      if (sigbar(j) >= parsig || sigbar(j) >= vsig(j)) {
        double temp = veta(j);
        if (trured > 0.0) {
          temp = 0.0;
          for (int i = 1; i <= n; ++i) temp += (dx(i) - sim(i, j)) * (dx(i) - sim(i, j));
          temp = std::sqrt(temp);
        }
        if (temp > edgmax) {
          l = j;
          edgmax = temp;
        }
      }
    }
    if (l > 0) jdrop = l;
    if (jdrop == 0) goto L550;

    double temp = 0.0;
    for (int i = 1; i <= n; ++i) {
      sim(i, jdrop) = dx(i);
      temp += simi(jdrop, i) * dx(i);
    }
    for (int i = 1; i <= n; ++i) simi(jdrop, i) /= temp;
    for (int j = 1; j <= n; ++j) {
      if (j != jdrop) {
        double t2 = 0.0;
        for (int i = 1; i <= n; ++i) t2 += simi(j, i) * dx(i);
        for (int i = 1; i <= n; ++i) simi(j, i) -= t2 * simi(jdrop, i);
      }
    }
    for (int k = 1; k <= mpp; ++k) datmat(k, jdrop) = con(k);

    if (trured > 0.0 && trured >= 0.1 * prerem) goto L140;
  }
L550:
  if (iflag == 0) {
    ibrnch = 0;
    goto L140;
  }

  // Reduce rho and reset parmu, or finish.
  if (rho > cfg.rhoend) {
    rho *= 0.5;
    if (rho <= 1.5 * cfg.rhoend) rho = cfg.rhoend;
    if (parmu > 0.0) {
      double denom = 0.0, cmin = 0.0, cmax = 0.0;
      for (int k = 1; k <= mp; ++k) {
        cmin = datmat(k, np);
        cmax = cmin;
        for (int i = 1; i <= n; ++i) {
          cmin = std::min(cmin, datmat(k, i));
          cmax = std::max(cmax, datmat(k, i));
        }
        if (k <= m && cmin < 0.5 * cmax) {
          const double temp = std::max(cmax, 0.0) - cmin;
          denom = denom <= 0.0 ? temp : std::min(denom, temp);
        }
      }
      if (denom == 0.0) {
        parmu = 0.0;
      } else if (cmax - cmin < parmu * denom) {
        parmu = (cmax - cmin) / denom;
      }
    }
    goto L140;
  }
  reason = Termination::Converged;

L600:
  res.reason = reason;
  res.iterations = nfvals;
  if (have_feasible) {
    res.x = best_x;
    res.value = best_f;
    res.feasible = true;
    res.max_violation = best_viol;
  } else {
    res.x = least_x;
    res.value = least_viol_f;
    res.feasible = false;
    res.max_violation = least_viol;
  }
  return res;
}

}  // namespace conint::opt
