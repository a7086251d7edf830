#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "conint/opt/optimizer.hpp"

namespace conint::opt {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIterations: return "max-iter";
    case Termination::Stagnation: return "stagnation";
  }
  return "?";
}

void write_history_csv(const OptResult& r, std::ostream& out) {
  out << "iteration,value,param_norm\n";
  char buf[96];
  for (const auto& h : r.history) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", h.iteration, h.value, h.param_norm);
    out << buf;
  }
}

void write_history_csv(const OptResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot create '" + path + "'");
  write_history_csv(r, out);
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace conint::opt
