#include "fup/serialize.hpp"

#include "fup/error.hpp"

namespace fup {

void to_json(json& j, const ExactRational& r) {
  j = json{{"numerator", r.numerator()}, {"denominator", r.denominator()}};
}

void from_json(const json& j, ExactRational& r) {
  if (j.is_string()) {
    r = ExactRational::parse(j.get<std::string>());
  } else if (j.is_number_integer()) {
    r = ExactRational(j.get<std::int64_t>());
  } else {
    r = ExactRational(j.at("numerator").get<std::int64_t>(), j.at("denominator").get<std::int64_t>());
  }
}

void to_json(json& j, const Alphabet& a) {
  j = json{{"M", a.base()}, {"letters", a.letters()}, {"size", a.size()}, {"delta", a.dimension()}};
}

Alphabet alphabet_from_json(const json& j) {
  return Alphabet(j.at("M").get<std::int64_t>(), j.at("letters").get<std::vector<std::int64_t>>());
}

void to_json(json& j, const CantorSet& c) {
  j = json{{"alphabet", c.alphabet}, {"k", c.depth}, {"modulus", c.modulus}, {"elements", c.elements}};
}

CantorSet cantor_from_json(const json& j) {
  CantorSet c = cantor_elements(alphabet_from_json(j.at("alphabet")), j.at("k").get<int>());
  if (j.contains("elements") && j.at("elements").get<std::vector<std::int64_t>>() != c.elements)
    throw ParameterError("Cantor set elements do not match alphabet and depth");
  return c;
}

void to_json(json& j, const DilatedCantorSet& d) {
  j = json{{"base", d.base}, {"alpha", d.alpha}, {"N", d.modulus}, {"elements", d.elements}};
}

DilatedCantorSet dilated_from_json(const json& j) {
  DilatedCantorSet d = dilate(cantor_from_json(j.at("base")), j.at("alpha").get<ExactRational>());
  if (j.contains("elements") && j.at("elements").get<std::vector<std::int64_t>>() != d.elements)
    throw ParameterError("dilated set elements do not match base set and alpha");
  return d;
}

void to_json(json& j, const NormCertificate& c) {
  j = json{{"sigma_max", c.sigma_max},   {"method", to_string(c.method)}, {"iterations", c.iterations},
           {"residual", c.residual},     {"seed", c.seed},                {"converged", c.converged}};
}

void to_json(json& j, const FupExponentReport& r) {
  j = json{{"M", r.base},
           {"k", r.depth},
           {"N", r.modulus},
           {"delta", r.delta},
           {"sigma_max", r.sigma_max},
           {"beta_k", r.beta},
           {"lower_theory", r.lower_theory},
           {"upper_theory", r.upper_theory}};
}

void to_json(json& j, const ZCertificate& z) {
  j = json{{"z_grid_min", z.z_grid_min},
           {"z_certified_lower", z.z_certified_lower},
           {"grid_step", z.grid_step},
           {"lipschitz_bound", z.lipschitz_bound},
           {"argmin_y", z.argmin_y},
           {"grid_points", z.grid_points}};
}

void to_json(json& j, const TailBoundCheck& t) {
  j = json{{"M", t.base},
           {"delta", t.delta},
           {"lhs_grid_max", t.lhs_grid_max},
           {"lhs_certified", t.lhs_certified},
           {"rhs", t.rhs},
           {"worst_y", t.worst_y},
           {"holds", t.holds}};
}

void to_json(json& j, const Theorem1Certificate& c) {
  j = json{{"report", c.report},
           {"norm", c.norm},
           {"z", c.z},
           {"tail", c.tail},
           {"nominal_delta", c.nominal_delta},
           {"seed_norm_squared", c.seed_norm_squared},
           {"chain_lhs", c.chain_lhs},
           {"chain_rhs", c.chain_rhs},
           {"chain_holds", c.chain_holds},
           {"sigma_lower", c.sigma_lower},
           {"sigma_above_lower", c.sigma_above_lower},
           {"beta_upper_from_z", c.beta_upper_from_z},
           {"beta_bound", c.beta_bound},
           {"beta_within_bound", c.beta_within_bound},
           {"norm_lower_ok", c.norm_lower_ok},
           {"width_ok", c.width_ok},
           {"exp_step_ok", c.exp_step_ok},
           {"binding", c.binding},
           {"warnings", c.warnings}};
}

void to_json(json& j, const RationalApprox& r) {
  j = json{{"b", r.b},
           {"q", r.q},
           {"Mdelta", r.mdelta},
           {"gamma", r.gamma},
           {"error", r.error},
           {"strict_regime", r.strict_regime},
           {"weak_regime", r.weak_regime}};
}

void to_json(json& j, const ExpSumBounds& b) {
  j = json{{"M", b.base},
           {"Mdelta", b.mdelta},
           {"k", b.depth},
           {"delta", b.delta},
           {"alpha", b.alpha},
           {"G_grid", b.g_grid},
           {"G_upper", b.g_upper},
           {"S_k_grid", b.s_k_grid},
           {"outer_points", b.outer_points},
           {"outer_step", b.outer_step},
           {"inner_points", b.inner_points},
           {"outer_lipschitz", b.outer_lipschitz},
           {"prop_rhs", b.prop_rhs},
           {"approx", b.approx}};
}

void to_json(json& j, const Theorem2Report& r) {
  j = json{{"M", r.base},
           {"Mdelta", r.mdelta},
           {"k", r.depth},
           {"alpha", r.alpha},
           {"N", r.modulus},
           {"delta", r.delta},
           {"eps", r.eps},
           {"dilated_size", r.dilated_size},
           {"approx", r.approx},
           {"norm", r.norm},
           {"report", r.report},
           {"target_exponent", r.target_exponent},
           {"empirical_slack", r.empirical_slack},
           {"G", r.g},
           {"implied_constant", r.implied_constant}};
}

void to_json(json& j, const PowerNorm& p) {
  j = json{{"n", p.power},
           {"norm_estimate", p.norm_estimate},
           {"rayleigh_norm", p.rayleigh_norm},
           {"residual", p.residual},
           {"iterations", p.iterations},
           {"converged", p.converged}};
}

void to_json(json& j, const GelfandReport& r) {
  j = json{{"N", r.n},         {"M", r.base},          {"alpha", r.alpha},
           {"k", r.depth},     {"powers", r.powers},   {"rho_upper", r.rho_upper},
           {"envelope", r.envelope}, {"submultiplicative", r.submultiplicative}, {"eps", r.eps}};
  j["q"] = r.q ? json(*r.q) : json(nullptr);
  j["gamma"] = r.gamma ? json(*r.gamma) : json(nullptr);
  j["theorem3_bound"] = r.theorem3_bound ? json(*r.theorem3_bound) : json(nullptr);
}

}  // namespace fup
