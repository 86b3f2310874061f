#include "histq/scenario/builtins.hpp"

#include <cmath>
#include <limits>

#include "histq/builtin_models.hpp"

namespace histq::scenario {

namespace {

constexpr double kExpectTol = 1e-9;

const char* kSpinZ = R"HQS(# Stern-Gerlach measurement along z: each detector outcome reveals the
# prior z polarization of the atom, whatever state was sent in.
space S dim 2;
space M dim 2;
ket zp in S = [1, 0];
ket zm in S = [0, 1];
ket psi0 in S = sqrt(1/3) * zp + i * sqrt(2/3) * zm;
ket Ap in M = [1, 0];
ket Am in M = [0, 1];
isometry J from S to M = |Ap><zp| + |Am><zm|;
operator Mp on M = [Ap];
operator Mm on M = [Am];
model SG = measure with J pointers { Mp = Mp, Mm = Mm };
family F = [psi0] (.) { zp = [zp], zm = [zm] } (.) { Mp, Mm } propagators (I(S), J);
query consistency F;
query probabilities F;
query conditional F given Mp@2 target zp@1;
query conditional F given Mm@2 target zm@1;
query povm SG;
)HQS";

const char* kSpinXPrep = R"HQS(# An apparatus built to measure z receives an x eigenstate. The readout
# says nothing about the x polarization, which traces back to the
# preparation. Asking the z question between preparation and readout is a
# valid description; asking it before the x question is not.
space S dim 2;
space M dim 2;
ket zp in S = [1, 0];
ket zm in S = [0, 1];
ket xp in S = (1/sqrt(2)) * (zp + zm);
ket xm in S = (1/sqrt(2)) * (zp - zm);
ket Ap in M = [1, 0];
ket Am in M = [0, 1];
isometry J from S to M = |Ap><zp| + |Am><zm|;
operator Mp on M = [Ap];
operator Mm on M = [Am];
family F = [xp] (.) { xp = [xp], xm = [xm] } (.) { Mp, Mm } propagators (I(S), J);
query consistency F;
query probabilities F;
query conditional F given Mp@2 target xp@1;
query conditional F given Mm@2 target xp@1;
family G = [xp] (.) { xp = [xp], xm = [xm] } (.) { zp = [zp], zm = [zm] } (.) { Mp, Mm } propagators (I(S), I(S), J);
query consistency G;
query conditional G given Mp@3 target zp@2;
query conditional G given Mm@3 target zm@2;
family H = [xp] (.) { zp = [zp], zm = [zm] } (.) { xp = [xp], xm = [xm] } (.) { Mp, Mm } propagators (I(S), I(S), J);
query consistency H;
)HQS";

const char* kMzOpen = R"HQS(# Mach-Zehnder with the second beamsplitter removed: the detectors tell
# which arm the photon took. The first beamsplitter prepares an equal
# superposition of the upper and lower arms.
space S dim 2;
space M dim 2;
ket up in S = [1, 0];
ket low in S = [0, 1];
ket in0 in S = (1/sqrt(2)) * (up + low);
ket Dp in M = [1, 0];
ket Dm in M = [0, 1];
isometry J from S to M = |Dp><up| + |Dm><low|;
operator MDp on M = [Dp];
operator MDm on M = [Dm];
family F = [in0] (.) { up = [up], low = [low] } (.) { Dp = MDp, Dm = MDm } propagators (I(S), J);
query consistency F;
query probabilities F;
query conditional F given Dp@2 target up@1;
query conditional F given Dm@2 target low@1;
)HQS";

const char* kMzClosed = R"HQS(# Mach-Zehnder with the second beamsplitter in place: the detectors now
# distinguish the two coherent superpositions of the arms. Feeding a
# single arm makes both detectors fire half the time, and each click
# certifies which superposition was present inside the interferometer.
space S dim 2;
space M dim 2;
ket up in S = [1, 0];
ket low in S = [0, 1];
ket xp in S = (1/sqrt(2)) * (up + low);
ket xm in S = (1/sqrt(2)) * (up - low);
ket Dp in M = [1, 0];
ket Dm in M = [0, 1];
isometry J from S to M = |Dp><xp| + |Dm><xm|;
operator MDp on M = [Dp];
operator MDm on M = [Dm];
family F = [up] (.) { xp = [xp], xm = [xm] } (.) { Dp = MDp, Dm = MDm } propagators (I(S), J);
query consistency F;
query probabilities F;
query conditional F given Dp@2 target xp@1;
query conditional F given Dm@2 target xm@1;
)HQS";

const char* kTrine = R"HQS(# Three-outcome trine measurement of a spin-half system. The three target
# states sit 120 degrees apart on the Bloch equator, so they cannot be
# mutually orthogonal; still, outcome k certifies the prior state u_k.
space S dim 2;
space M dim 3;
ket zp in S = [1, 0];
ket zm in S = [0, 1];
ket u1 in S = (1/sqrt(2)) * (zp + zm);
ket u2 in S = (1/sqrt(2)) * (omega * zp + omega * omega * zm);
ket u3 in S = (1/sqrt(2)) * (omega * omega * zp + omega * zm);
ket xm in S = (1/sqrt(2)) * (zp - zm);
ket k1 in M = [1, 0, 0];
ket k2 in M = [0, 1, 0];
ket k3 in M = [0, 0, 1];
ket w in M = (1/sqrt(3)) * (k1 + k2 + k3);
ket v1 in M = sqrt(3/2) * k1 - sqrt(1/2) * w;
ket v2 in M = sqrt(3/2) * k2 - sqrt(1/2) * w;
ket v3 in M = sqrt(3/2) * k3 - sqrt(1/2) * w;
isometry J from S to M = (2/3) * (|v1><u1| + |v2><u2| + |v3><u3|);
model TRINE = measure with J pointers { M1 = [k1], M2 = [k2], M3 = [k3] };
query povm TRINE;
query inference TRINE initial u1;
query inference TRINE initial xm;
family L = [u1] (.) linked { M1 : { u1 = [u1], n1 = I(S) - [u1] }; M2 : { u2 = [u2], n2 = I(S) - [u2] }; M3 : { u3 = [u3], n3 = I(S) - [u3] } } (.) { M1 = [k1], M2 = [k2], M3 = [k3] } propagators (I(S), J);
query consistency L;
query probabilities L;
query conditional L given M2@2 target u2@1;
)HQS";

const char* kWeak = R"HQS(# Weak coupling to a three-level probe, then strong readout of the system
# (E/F basis) and the probe (0/1/2 basis). Coupling strength 1/10; the
# system readout basis is the balanced rotation of the channel basis.
space S dim 2;
space M dim 6;
ket A in S = [1, 0];
ket B in S = [0, 1];
ket psi0 in S = sqrt(1/3) * A + sqrt(2/3) * B;
ket E0 in M = [1, 0, 0, 0, 0, 0];
ket E1 in M = [0, 1, 0, 0, 0, 0];
ket E2 in M = [0, 0, 1, 0, 0, 0];
ket F0 in M = [0, 0, 0, 1, 0, 0];
ket F1 in M = [0, 0, 0, 0, 1, 0];
ket F2 in M = [0, 0, 0, 0, 0, 1];
isometry J from S to M = sqrt(9/10) * (1/sqrt(2)) * (|E0><A| + |F0><A| - |E0><B| + |F0><B|) + sqrt(1/10) * (1/sqrt(2)) * (|E1><A| + |F1><A| - |E2><B| + |F2><B|);
model WEAK = measure with J pointers { E0 = [E0], E1 = [E1], E2 = [E2], F0 = [F0], F1 = [F1], F2 = [F2] };
query povm WEAK;
query inference WEAK initial psi0;
)HQS";

const char* kContextuality = R"HQS(# One apparatus, two switch settings. Both settings measure A, whose
# value separates the first detector from the other two; the setting only
# changes which of two incompatible observables is read out alongside A.
# The A statistics cannot depend on the setting.
space S dim 3;
space M dim 3;
ket k1 in S = [1, 0, 0];
ket k2 in S = [0, 1, 0];
ket k3 in S = [0, 0, 1];
ket h2 in S = (1/sqrt(2)) * (k2 + k3);
ket h3 in S = (1/sqrt(2)) * (k2 - k3);
ket D1 in M = [1, 0, 0];
ket D2 in M = [0, 1, 0];
ket D3 in M = [0, 0, 1];
operator A on S = |k1><k1| - |k2><k2| - |k3><k3|;
operator B on S = (1/2) * |k1><k1| + |k2><k2| - |k3><k3|;
operator C on S = 2 * |k1><k1| + |k2><k3| + |k3><k2|;
isometry Jb from S to M = |D1><k1| + |D2><k2| + |D3><k3|;
isometry Jg from S to M = |D1><k1| + |D2><h2| + |D3><h3|;
model SETB = measure with Jb pointers { D1 = [D1], D2 = [D2], D3 = [D3] };
model SETG = measure with Jg pointers { D1 = [D1], D2 = [D2], D3 = [D3] };
ket p3 in S = (1/sqrt(3)) * (k1 + k2 + k3);
query noncontextuality SETB SETG observable A groups { plus = (D1), minus = (D2, D3) } probes (k1, h2, p3);
)HQS";

const char* kEprZ = R"HQS(# Singlet pair; only particle a is measured, along z. The pointer reading
# fixes the prior z components of both particles, while the same readout
# says nothing about the x components beyond what the initial state
# already anticorrelates.
space Sa dim 2;
space Sb dim 2;
space Sab dim 4;
space Ma dim 2;
space M dim 4;
ket zpa in Sa = [1, 0];
ket zma in Sa = [0, 1];
ket xpa in Sa = (1/sqrt(2)) * (zpa + zma);
ket xma in Sa = (1/sqrt(2)) * (zpa - zma);
ket zpb in Sb = [1, 0];
ket zmb in Sb = [0, 1];
ket xpb in Sb = (1/sqrt(2)) * (zpb + zmb);
ket xmb in Sb = (1/sqrt(2)) * (zpb - zmb);
ket singlet in Sab = (1/sqrt(2)) * (zpa (x) zmb - zma (x) zpb);
ket Ap in Ma = [1, 0];
ket Am in Ma = [0, 1];
isometry Ja from Sa to Ma = |Ap><zpa| + |Am><zma|;
isometry J from Sab to M = Ja (x) I(Sb);
operator Mp on M = [Ap] (x) I(Sb);
operator Mm on M = [Am] (x) I(Sb);
model EPR = measure with J pointers { Mp = Mp, Mm = Mm };
family FZ = [singlet] (.) { zpa&zmb = [zpa] (x) [zmb], zpa&zpb = [zpa] (x) [zpb], zma&zpb = [zma] (x) [zpb], zma&zmb = [zma] (x) [zmb] } (.) { Mp, Mm } propagators (I(Sab), J);
query consistency FZ;
query probabilities FZ;
query conditional FZ given Mp@2 target zpa@1;
query conditional FZ given Mp@2 target zmb@1;
query conditional FZ given Mm@2 target zma@1;
query conditional FZ given Mm@2 target zpb@1;
family FX = [singlet] (.) { xpa&xmb = [xpa] (x) [xmb], xpa&xpb = [xpa] (x) [xpb], xma&xpb = [xma] (x) [xpb], xma&xmb = [xma] (x) [xmb] } (.) { Mp, Mm } propagators (I(Sab), J);
query consistency FX;
query conditional FX given Mp@2 target xpa@1 & xmb@1;
query conditional FX given Mm@2 target xpa@1 & xmb@1;
query conditional FX given Mp@2 target xma@1 & xpb@1;
query conditional FX given Mm@2 target xma@1 & xpb@1;
)HQS";

const char* kEprX = R"HQS(# Singlet pair with particle a measured along x instead. Now the readout
# fixes the prior x components of both particles and is silent about the
# z components.
space Sa dim 2;
space Sb dim 2;
space Sab dim 4;
space Ma dim 2;
space M dim 4;
ket zpa in Sa = [1, 0];
ket zma in Sa = [0, 1];
ket xpa in Sa = (1/sqrt(2)) * (zpa + zma);
ket xma in Sa = (1/sqrt(2)) * (zpa - zma);
ket zpb in Sb = [1, 0];
ket zmb in Sb = [0, 1];
ket xpb in Sb = (1/sqrt(2)) * (zpb + zmb);
ket xmb in Sb = (1/sqrt(2)) * (zpb - zmb);
ket singlet in Sab = (1/sqrt(2)) * (zpa (x) zmb - zma (x) zpb);
ket Ap in Ma = [1, 0];
ket Am in Ma = [0, 1];
isometry Ja from Sa to Ma = |Ap><xpa| + |Am><xma|;
isometry J from Sab to M = Ja (x) I(Sb);
operator Mp on M = [Ap] (x) I(Sb);
operator Mm on M = [Am] (x) I(Sb);
model EPR = measure with J pointers { Mp = Mp, Mm = Mm };
family FX = [singlet] (.) { xpa&xmb = [xpa] (x) [xmb], xpa&xpb = [xpa] (x) [xpb], xma&xpb = [xma] (x) [xpb], xma&xmb = [xma] (x) [xmb] } (.) { Mp, Mm } propagators (I(Sab), J);
query consistency FX;
query probabilities FX;
query conditional FX given Mp@2 target xpa@1;
query conditional FX given Mp@2 target xmb@1;
query conditional FX given Mm@2 target xma@1;
query conditional FX given Mm@2 target xpb@1;
family FZ = [singlet] (.) { zpa&zmb = [zpa] (x) [zmb], zpa&zpb = [zpa] (x) [zpb], zma&zpb = [zma] (x) [zpb], zma&zmb = [zma] (x) [zmb] } (.) { Mp, Mm } propagators (I(Sab), J);
query consistency FZ;
query conditional FZ given Mp@2 target zpa@1 & zmb@1;
query conditional FZ given Mm@2 target zpa@1 & zmb@1;
query conditional FZ given Mp@2 target zma@1 & zpb@1;
query conditional FZ given Mm@2 target zma@1 & zpb@1;
)HQS";

// ---- expectation plumbing ----

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

template <typename T>
const T* payload_of(const ResultSet& rs, const std::string& id) {
  const QueryResult* r = rs.find(id);
  if (!r || !r->ok()) return nullptr;
  return std::get_if<T>(&r->payload);
}

double joint(const ResultSet& rs, const std::string& id, const std::string& label) {
  if (const auto* t = payload_of<ProbabilityTable>(rs, id)) {
    for (const auto& e : t->entries) {
      if (e.label() == label) return e.probability;
    }
  }
  return nan_value();
}

double conditional(const ResultSet& rs, const std::string& id) {
  if (const auto* c = payload_of<ConditionalResult>(rs, id)) return c->probability;
  return nan_value();
}

double consistent_flag(const ResultSet& rs, const std::string& id) {
  if (const auto* c = payload_of<ConsistencyReport>(rs, id)) {
    return c->consistent() ? 1.0 : 0.0;
  }
  return nan_value();
}

double gram_off_diagonal(const ResultSet& rs, const std::string& id) {
  if (const auto* c = payload_of<ConsistencyReport>(rs, id)) return c->max_off_diagonal;
  return nan_value();
}

double povm_entry(const ResultSet& rs, const std::string& id, const std::string& outcome,
                  int row, int col, bool imag) {
  if (const auto* p = payload_of<POVM>(rs, id)) {
    const int idx = p->index_of(outcome);
    if (idx >= 0) {
      const Complex v = p->elements[idx](row, col);
      return imag ? v.imag() : v.real();
    }
  }
  return nan_value();
}

const InferenceResult* inference_outcome(const ResultSet& rs, const std::string& id,
                                         const std::string& outcome) {
  if (const auto* s = payload_of<InferenceSummary>(rs, id)) {
    for (const auto& o : s->outcomes) {
      if (o.outcome == outcome) return &o;
    }
  }
  return nullptr;
}

double inference_marginal(const ResultSet& rs, const std::string& id,
                          const std::string& outcome) {
  const auto* o = inference_outcome(rs, id, outcome);
  return o ? o->outcome_probability : nan_value();
}

double inference_certain_prior(const ResultSet& rs, const std::string& id,
                               const std::string& outcome) {
  const auto* o = inference_outcome(rs, id, outcome);
  if (!o || !o->certain || !o->reachable || o->certain_index < 0) return nan_value();
  return o->prior_distribution[o->certain_index];
}

double nc_setting_group(const ResultSet& rs, const std::string& id, int probe, int group,
                        bool second) {
  if (const auto* s = payload_of<NoncontextualitySummary>(rs, id)) {
    if (probe < static_cast<int>(s->report.probes.size())) {
      const auto& p = s->report.probes[probe];
      const auto& dist = second ? p.distribution_second : p.distribution_first;
      if (group < static_cast<int>(dist.size())) return dist[group];
    }
  }
  return nan_value();
}

double nc_max_difference(const ResultSet& rs, const std::string& id) {
  if (const auto* s = payload_of<NoncontextualitySummary>(rs, id)) {
    return s->report.max_difference;
  }
  return nan_value();
}

struct Checker {
  const ResultSet& rs;
  std::vector<ExpectationCheck> checks;

  void expect(std::string name, double expected, double actual, double tol = kExpectTol) {
    ExpectationCheck c;
    c.name = std::move(name);
    c.expected = expected;
    c.actual = actual;
    c.passed = std::isfinite(actual) && std::abs(actual - expected) <= tol;
    checks.push_back(std::move(c));
  }
};

void expect_spin_z(Checker& c) {
  c.expect("family consistent", 1.0, consistent_flag(c.rs, "q1"));
  c.expect("Pr(zp,Mp)", 1.0 / 3.0, joint(c.rs, "q2", "zp,Mp"));
  c.expect("Pr(zm,Mm)", 2.0 / 3.0, joint(c.rs, "q2", "zm,Mm"));
  c.expect("Pr(zp,Mm)", 0.0, joint(c.rs, "q2", "zp,Mm"));
  c.expect("Pr(zm,Mp)", 0.0, joint(c.rs, "q2", "zm,Mp"));
  c.expect("Pr(zp|Mp)", 1.0, conditional(c.rs, "q3"));
  c.expect("Pr(zm|Mm)", 1.0, conditional(c.rs, "q4"));
  c.expect("Q(Mp)[0,0]", 1.0, povm_entry(c.rs, "q5", "Mp", 0, 0, false));
  c.expect("Q(Mp)[0,1]", 0.0, povm_entry(c.rs, "q5", "Mp", 0, 1, false));
  c.expect("Q(Mp)[1,1]", 0.0, povm_entry(c.rs, "q5", "Mp", 1, 1, false));
  c.expect("Q(Mm)[1,1]", 1.0, povm_entry(c.rs, "q5", "Mm", 1, 1, false));
  c.expect("Q(Mm)[0,0]", 0.0, povm_entry(c.rs, "q5", "Mm", 0, 0, false));
  c.expect("Q(0)[0,0]", 0.0, povm_entry(c.rs, "q5", "0", 0, 0, false));
  c.expect("Q(0)[1,1]", 0.0, povm_entry(c.rs, "q5", "0", 1, 1, false));
}

void expect_spin_x_prep(Checker& c) {
  c.expect("x-question family consistent", 1.0, consistent_flag(c.rs, "q1"));
  c.expect("Pr(xp,Mp)", 0.5, joint(c.rs, "q2", "xp,Mp"));
  c.expect("Pr(xp,Mm)", 0.5, joint(c.rs, "q2", "xp,Mm"));
  c.expect("Pr(xm,Mp)", 0.0, joint(c.rs, "q2", "xm,Mp"));
  c.expect("Pr(xm,Mm)", 0.0, joint(c.rs, "q2", "xm,Mm"));
  c.expect("Pr(xp|Mp)", 1.0, conditional(c.rs, "q3"));
  c.expect("Pr(xp|Mm)", 1.0, conditional(c.rs, "q4"));
  c.expect("x-then-z family consistent", 1.0, consistent_flag(c.rs, "q5"));
  c.expect("Pr(zp|Mp)", 1.0, conditional(c.rs, "q6"));
  c.expect("Pr(zm|Mm)", 1.0, conditional(c.rs, "q7"));
  c.expect("z-then-x family inconsistent", 0.0, consistent_flag(c.rs, "q8"));
  c.expect("z-then-x Gram off-diagonal", 0.125, gram_off_diagonal(c.rs, "q8"));
}

void expect_mz_open(Checker& c) {
  c.expect("family consistent", 1.0, consistent_flag(c.rs, "q1"));
  c.expect("Pr(up,Dp)", 0.5, joint(c.rs, "q2", "up,Dp"));
  c.expect("Pr(low,Dm)", 0.5, joint(c.rs, "q2", "low,Dm"));
  c.expect("Pr(up,Dm)", 0.0, joint(c.rs, "q2", "up,Dm"));
  c.expect("Pr(low,Dp)", 0.0, joint(c.rs, "q2", "low,Dp"));
  c.expect("Pr(up|Dp)", 1.0, conditional(c.rs, "q3"));
  c.expect("Pr(low|Dm)", 1.0, conditional(c.rs, "q4"));
}

void expect_mz_closed(Checker& c) {
  c.expect("family consistent", 1.0, consistent_flag(c.rs, "q1"));
  c.expect("Pr(xp,Dp)", 0.5, joint(c.rs, "q2", "xp,Dp"));
  c.expect("Pr(xm,Dm)", 0.5, joint(c.rs, "q2", "xm,Dm"));
  c.expect("Pr(xp,Dm)", 0.0, joint(c.rs, "q2", "xp,Dm"));
  c.expect("Pr(xm,Dp)", 0.0, joint(c.rs, "q2", "xm,Dp"));
  c.expect("Pr(xp|Dp)", 1.0, conditional(c.rs, "q3"));
  c.expect("Pr(xm|Dm)", 1.0, conditional(c.rs, "q4"));
}

void expect_trine(Checker& c) {
  const auto u = builtin::trine_states();
  const std::vector<std::string> outcomes = {"M1", "M2", "M3"};
  for (int k = 0; k < 3; ++k) {
    const ComplexMatrix q = (2.0 / 3.0) * projector_onto(u[k]);
    for (int r = 0; r < 2; ++r) {
      for (int col = 0; col < 2; ++col) {
        const std::string base =
            "Q(" + outcomes[k] + ")[" + std::to_string(r) + "," + std::to_string(col) + "]";
        c.expect(base + " re", q(r, col).real(),
                 povm_entry(c.rs, "q1", outcomes[k], r, col, false));
        c.expect(base + " im", q(r, col).imag(),
                 povm_entry(c.rs, "q1", outcomes[k], r, col, true));
      }
    }
  }
  c.expect("Q(0)[0,0]", 0.0, povm_entry(c.rs, "q1", "0", 0, 0, false));
  c.expect("Q(0)[1,1]", 0.0, povm_entry(c.rs, "q1", "0", 1, 1, false));

  c.expect("Pr(M1) for u1 input", 2.0 / 3.0, inference_marginal(c.rs, "q2", "M1"));
  c.expect("Pr(M2) for u1 input", 1.0 / 6.0, inference_marginal(c.rs, "q2", "M2"));
  c.expect("Pr(M3) for u1 input", 1.0 / 6.0, inference_marginal(c.rs, "q2", "M3"));
  c.expect("u2 certain given M2", 1.0, inference_certain_prior(c.rs, "q2", "M2"));

  c.expect("Pr(M1) for xm input", 0.0, inference_marginal(c.rs, "q3", "M1"));
  c.expect("Pr(M2) for xm input", 0.5, inference_marginal(c.rs, "q3", "M2"));
  c.expect("Pr(M3) for xm input", 0.5, inference_marginal(c.rs, "q3", "M3"));

  c.expect("linked family consistent", 1.0, consistent_flag(c.rs, "q4"));
  c.expect("Pr(u1,M1)", 2.0 / 3.0, joint(c.rs, "q5", "u1,M1"));
  c.expect("Pr(u2,M2)", 1.0 / 6.0, joint(c.rs, "q5", "u2,M2"));
  c.expect("Pr(u3,M3)", 1.0 / 6.0, joint(c.rs, "q5", "u3,M3"));
  c.expect("Pr(n1,M1)", 0.0, joint(c.rs, "q5", "n1,M1"));
  c.expect("Pr(n2,M2)", 0.0, joint(c.rs, "q5", "n2,M2"));
  c.expect("Pr(u2|M2)", 1.0, conditional(c.rs, "q6"));
}

void expect_weak(Checker& c) {
  const double eps = 0.1;
  const double s = 1.0 / std::sqrt(2.0);
  const Complex ae(s, 0), af(s, 0), be(-s, 0), bf(s, 0);

  ComplexMatrix qe0(2, 2), qf0(2, 2), qe1(2, 2), qe2(2, 2), qf1(2, 2), qf2(2, 2);
  qe0 << std::norm(ae), std::conj(ae) * be, ae * std::conj(be), std::norm(be);
  qe0 *= (1 - eps);
  qf0 << std::norm(af), std::conj(af) * bf, af * std::conj(bf), std::norm(bf);
  qf0 *= (1 - eps);
  qe1 << eps * std::norm(ae), 0, 0, 0;
  qe2 << 0, 0, 0, eps * std::norm(be);
  qf1 << eps * std::norm(af), 0, 0, 0;
  qf2 << 0, 0, 0, eps * std::norm(bf);

  const std::vector<std::pair<std::string, ComplexMatrix>> expected = {
      {"E0", qe0}, {"E1", qe1}, {"E2", qe2}, {"F0", qf0}, {"F1", qf1}, {"F2", qf2}};
  for (const auto& [outcome, q] : expected) {
    for (int r = 0; r < 2; ++r) {
      for (int col = 0; col < 2; ++col) {
        const std::string base =
            "Q(" + outcome + ")[" + std::to_string(r) + "," + std::to_string(col) + "]";
        c.expect(base + " re", q(r, col).real(),
                 povm_entry(c.rs, "q1", outcome, r, col, false));
        c.expect(base + " im", q(r, col).imag(),
                 povm_entry(c.rs, "q1", outcome, r, col, true));
      }
    }
  }

  Ket psi0(2);
  psi0 << std::sqrt(1.0 / 3.0), std::sqrt(2.0 / 3.0);
  for (const auto& [outcome, q] : expected) {
    const double marginal = (psi0.dot(q * psi0)).real();
    c.expect("Pr(" + outcome + ")", marginal, inference_marginal(c.rs, "q2", outcome));
  }
  c.expect("channel A certain given E1", 1.0, inference_certain_prior(c.rs, "q2", "E1"));
  c.expect("channel B certain given F2", 1.0, inference_certain_prior(c.rs, "q2", "F2"));
}

void expect_contextuality(Checker& c) {
  c.expect("settings agree", 0.0, nc_max_difference(c.rs, "q1"));
  c.expect("probe k1: Pr(A=+1), setting beta", 1.0, nc_setting_group(c.rs, "q1", 0, 0, false));
  c.expect("probe k1: Pr(A=+1), setting gamma", 1.0, nc_setting_group(c.rs, "q1", 0, 0, true));
  c.expect("probe h2: Pr(A=-1), setting beta", 1.0, nc_setting_group(c.rs, "q1", 1, 1, false));
  c.expect("probe h2: Pr(A=-1), setting gamma", 1.0, nc_setting_group(c.rs, "q1", 1, 1, true));
  c.expect("probe p3: Pr(A=+1), setting beta", 1.0 / 3.0,
           nc_setting_group(c.rs, "q1", 2, 0, false));
  c.expect("probe p3: Pr(A=+1), setting gamma", 1.0 / 3.0,
           nc_setting_group(c.rs, "q1", 2, 0, true));
}

void expect_epr_z(Checker& c) {
  c.expect("z family consistent", 1.0, consistent_flag(c.rs, "q1"));
  c.expect("Pr(zpa&zmb,Mp)", 0.5, joint(c.rs, "q2", "zpa&zmb,Mp"));
  c.expect("Pr(zma&zpb,Mm)", 0.5, joint(c.rs, "q2", "zma&zpb,Mm"));
  c.expect("Pr(zpa&zpb,Mp)", 0.0, joint(c.rs, "q2", "zpa&zpb,Mp"));
  c.expect("Pr(zma&zmb,Mm)", 0.0, joint(c.rs, "q2", "zma&zmb,Mm"));
  c.expect("Pr(zpa|Mp)", 1.0, conditional(c.rs, "q3"));
  c.expect("Pr(zmb|Mp)", 1.0, conditional(c.rs, "q4"));
  c.expect("Pr(zma|Mm)", 1.0, conditional(c.rs, "q5"));
  c.expect("Pr(zpb|Mm)", 1.0, conditional(c.rs, "q6"));
  c.expect("x family consistent", 1.0, consistent_flag(c.rs, "q7"));
  c.expect("Pr(xpa&xmb|Mp)", 0.5, conditional(c.rs, "q8"));
  c.expect("Pr(xpa&xmb|Mm)", 0.5, conditional(c.rs, "q9"));
  c.expect("Pr(xma&xpb|Mp)", 0.5, conditional(c.rs, "q10"));
  c.expect("Pr(xma&xpb|Mm)", 0.5, conditional(c.rs, "q11"));
}

void expect_epr_x(Checker& c) {
  c.expect("x family consistent", 1.0, consistent_flag(c.rs, "q1"));
  c.expect("Pr(xpa&xmb,Mp)", 0.5, joint(c.rs, "q2", "xpa&xmb,Mp"));
  c.expect("Pr(xma&xpb,Mm)", 0.5, joint(c.rs, "q2", "xma&xpb,Mm"));
  c.expect("Pr(xpa|Mp)", 1.0, conditional(c.rs, "q3"));
  c.expect("Pr(xmb|Mp)", 1.0, conditional(c.rs, "q4"));
  c.expect("Pr(xma|Mm)", 1.0, conditional(c.rs, "q5"));
  c.expect("Pr(xpb|Mm)", 1.0, conditional(c.rs, "q6"));
  c.expect("z family consistent", 1.0, consistent_flag(c.rs, "q7"));
  c.expect("Pr(zpa&zmb|Mp)", 0.5, conditional(c.rs, "q8"));
  c.expect("Pr(zpa&zmb|Mm)", 0.5, conditional(c.rs, "q9"));
  c.expect("Pr(zma&zpb|Mp)", 0.5, conditional(c.rs, "q10"));
  c.expect("Pr(zma&zpb|Mm)", 0.5, conditional(c.rs, "q11"));
}

}  // namespace

const std::vector<BuiltinScenario>& builtin_scenarios() {
  static const std::vector<BuiltinScenario> scenarios = {
      {"spin-z", "Stern-Gerlach z measurement", kSpinZ},
      {"spin-x-prep", "x preparation fed to a z apparatus", kSpinXPrep},
      {"mz-open", "Mach-Zehnder, second beamsplitter removed", kMzOpen},
      {"mz-closed", "Mach-Zehnder, second beamsplitter present", kMzClosed},
      {"trine", "three-outcome trine POVM", kTrine},
      {"weak", "weak probe coupling with strong readout", kWeak},
      {"contextuality", "one apparatus, two switch settings", kContextuality},
      {"epr-z", "singlet pair, particle a measured along z", kEprZ},
      {"epr-x", "singlet pair, particle a measured along x", kEprX},
  };
  return scenarios;
}

const BuiltinScenario* find_builtin(const std::string& name) {
  for (const auto& scenario : builtin_scenarios()) {
    if (scenario.name == name) return &scenario;
  }
  return nullptr;
}

std::vector<ExpectationCheck> check_builtin_expectations(const std::string& name,
                                                         const ResultSet& results) {
  Checker checker{results, {}};
  if (name == "spin-z") {
    expect_spin_z(checker);
  } else if (name == "spin-x-prep") {
    expect_spin_x_prep(checker);
  } else if (name == "mz-open") {
    expect_mz_open(checker);
  } else if (name == "mz-closed") {
    expect_mz_closed(checker);
  } else if (name == "trine") {
    expect_trine(checker);
  } else if (name == "weak") {
    expect_weak(checker);
  } else if (name == "contextuality") {
    expect_contextuality(checker);
  } else if (name == "epr-z") {
    expect_epr_z(checker);
  } else if (name == "epr-x") {
    expect_epr_x(checker);
  } else {
    throw UnknownOutcomeError("unknown built-in scenario: " + name);
  }
  return std::move(checker.checks);
}

}  // namespace histq::scenario
