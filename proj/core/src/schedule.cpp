#include "bregman/config.hpp"

#include "bregman/errors.hpp"

#include <cmath>
#include <sstream>

namespace bregman {

double theta(long k) {
  if (k < -1) throw InputError("theta: index must be >= -1, got " + std::to_string(k));
  if (k == -1) return 1.0;
  return 2.0 / (static_cast<double>(k) + 2.0);
}

double alpha(std::size_t k) {
  const long index = static_cast<long>(k);
  return 1.0 + theta(index + 1) * (1.0 / theta(index) - 1.0);
}

Schedule Schedule::constant(double a) {
  if (!(a > 0.0 && a <= 2.0)) {
    throw InputError("constant schedule weight must lie in (0, 2], got " + std::to_string(a));
  }
  return Schedule(Kind::Constant, a);
}

Schedule Schedule::parse(std::string_view text) {
  if (text == "tseng") return tseng();
  constexpr std::string_view prefix = "constant:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string number(text.substr(prefix.size()));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size()) {
      throw InputError("bad schedule weight in '" + std::string(text) + "'");
    }
    return constant(value);
  }
  throw InputError("unknown schedule '" + std::string(text) + "' (expected tseng or constant:<a>)");
}

std::string Schedule::describe() const {
  if (kind_ == Kind::Tseng) return "tseng";
  std::ostringstream out;
  out.precision(17);
  out << "constant:" << constant_;
  return out.str();
}

std::string_view to_string(TauRule rule) {
  switch (rule) {
    case TauRule::PaperCS: return "paper-cs";
    case TauRule::TheorySafe: return "theory-safe";
    case TauRule::PaperMC: return "paper-mc";
    case TauRule::Explicit: return "explicit";
  }
  return "unknown";
}

TauRule tau_rule_from_string(std::string_view name) {
  if (name == "paper-cs") return TauRule::PaperCS;
  if (name == "theory-safe") return TauRule::TheorySafe;
  if (name == "paper-mc") return TauRule::PaperMC;
  if (name == "explicit") return TauRule::Explicit;
  throw InputError("unknown tau rule '" + std::string(name) + "'");
}

double default_tau(TauRule rule, double mu, double norm_a_sq) {
  if (!(mu > 0.0)) throw InputError("default_tau: mu must be positive");
  switch (rule) {
    case TauRule::PaperMC: return 1.0 / mu;
    case TauRule::PaperCS:
    case TauRule::TheorySafe:
      if (!(norm_a_sq > 0.0)) throw InputError("default_tau: ||A||^2 must be positive");
      return (rule == TauRule::PaperCS ? 2.0 : 1.0) / (mu * norm_a_sq);
    case TauRule::Explicit: break;
  }
  throw InputError("default_tau: the explicit rule has no default value");
}

std::string_view to_string(McShrinkArg arg) {
  return arg == McShrinkArg::Tilde ? "tilde" : "as-printed";
}

McShrinkArg mc_shrink_arg_from_string(std::string_view name) {
  if (name == "tilde") return McShrinkArg::Tilde;
  if (name == "as-printed") return McShrinkArg::AsPrinted;
  throw InputError("unknown mc shrink argument '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InputError("mu must be positive and finite");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InputError("tau must be positive and finite");
  if (!(residual_tol > 0.0 && residual_tol < 1.0)) {
    throw InputError("residual tolerance must lie in (0, 1)");
  }
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::Lb: return "lb";
    case Variant::Alb: return "alb";
    case Variant::LbPrimal: return "lb-primal";
    case Variant::LbDual: return "lb-dual";
    case Variant::AlbPrimal: return "alb-primal";
    case Variant::AlbDual: return "alb-dual";
    case Variant::Bregman: return "bregman";
    case Variant::AugLag: return "auglag";
  }
  return "unknown";
}

Variant variant_from_string(std::string_view name) {
  for (Variant v : {Variant::Lb, Variant::Alb, Variant::LbPrimal, Variant::LbDual,
                    Variant::AlbPrimal, Variant::AlbDual, Variant::Bregman, Variant::AugLag}) {
    if (to_string(v) == name) return v;
  }
  throw InputError("unknown variant '" + std::string(name) + "'");
}

bool is_accelerated(Variant variant) {
  return variant == Variant::Alb || variant == Variant::AlbPrimal || variant == Variant::AlbDual;
}

}  // namespace bregman
