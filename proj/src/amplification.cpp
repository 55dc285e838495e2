#include "fqs/amplification.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fqs {

namespace {

RVec householder_axis(int L_in, int L_total) {
    SambeSpace outer{L_total, 1}, inner{L_in, 1};
    RVec w = RVec::Zero(outer.width());
    const double amp = 1.0 / std::sqrt(double(inner.width()));
    for (int l = inner.lo(); l <= inner.hi(); ++l) w(outer.slot(l)) -= amp;
    w(outer.slot(0)) += 1.0;
    return w;
}

// (I - 2 w w^T / w^T w) (x) I_d, in place
void apply_householder(Mat& v, const SambeSpace& sp, const RVec& w) {
    const double scale = 2.0 / w.squaredNorm();
    const int d = sp.d;
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Map<Mat> m(v.col(c).data(), d, sp.width());
        Vec s = m * w.cast<cd>();
        m.noalias() -= scale * s * w.cast<cd>().transpose();
    }
}

RVec linear_potential_diag(const SambeSpace& sp, double omega) {
    RVec out(sp.dim());
    for (int l = sp.lo(); l <= sp.hi(); ++l) out.segment(sp.offset(l), sp.d).setConstant(l * omega);
    return out;
}

void apply_stage(Mat& v, const SambeSpace& sp, const Stage& s, bool adjoint) {
    switch (s.kind) {
    case StageKind::Prepare:
    case StageKind::Unprepare:
        apply_householder(v, sp, householder_axis(s.l_in, sp.L));
        break;
    case StageKind::Evolve:
        v = s.propagator->apply(v, adjoint ? -s.t : s.t);
        break;
    case StageKind::Phase: {
        const double t = adjoint ? -s.t : s.t;
        for (Eigen::Index i = 0; i < v.rows(); ++i) v.row(i) *= std::exp(-I1 * (s.diag(i) * t));
        break;
    }
    case StageKind::Reflect: {
        const int keep = sp.offset(0);
        for (Eigen::Index i = 0; i < v.rows(); ++i)
            if (i < keep || i >= keep + sp.d) v.row(i) *= -1.0;
        break;
    }
    case StageKind::Scalar:
        v *= adjoint ? std::conj(s.scalar) : s.scalar;
        break;
    }
}

Stage evolve_stage(const SambeOperator& op, double t) {
    Stage s;
    s.kind = StageKind::Evolve;
    s.t = t;
    s.propagator = PropagatorCache::global().get(op.matrix);
    return s;
}

Stage phase_stage(const SambeSpace& sp, double omega, double t) {
    Stage s;
    s.kind = StageKind::Phase;
    s.t = t;
    s.diag = linear_potential_diag(sp, omega);
    return s;
}

Stage simple_stage(StageKind k, int l_in = 0, cd scalar = 1.0) {
    Stage s;
    s.kind = k;
    s.l_in = l_in;
    s.scalar = scalar;
    return s;
}

Mat zero_columns(const SambeSpace& sp) {
    Mat in = Mat::Zero(sp.dim(), sp.d);
    in.block(sp.offset(0), 0, sp.d, sp.d).setIdentity();
    return in;
}

}  // namespace

Mat u_ini(int L_in, int L_total) {
    if (L_in < 1 || L_in > L_total) throw Error(ErrorCode::InvalidConfig, "need 1 <= L_in <= L_total");
    const RVec w = householder_axis(L_in, L_total);
    RMat u = RMat::Identity(w.size(), w.size()) - 2.0 * w * w.transpose() / w.squaredNorm();
    return u.cast<cd>();
}

Mat reflection(int L_total, int d) {
    SambeSpace sp{L_total, d};
    Mat r = -Mat::Identity(sp.dim(), sp.dim());
    r.block(sp.offset(0), sp.offset(0), d, d).setIdentity();
    return r;
}

Mat AmplifierCircuit::apply(const Mat& v) const {
    Mat out = v;
    for (const auto& s : stages) apply_stage(out, space, s, false);
    return out;
}

Mat AmplifierCircuit::apply_adjoint(const Mat& v) const {
    Mat out = v;
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) apply_stage(out, space, *it, true);
    return out;
}

Mat AmplifierCircuit::apply_to_zero() const { return apply(zero_columns(space)); }

Mat AmplifierCircuit::block00() const {
    return apply_to_zero().block(space.offset(0), 0, space.d, space.d);
}

Mat AmplifierCircuit::total() const {
    return apply(Mat(Mat::Identity(space.dim(), space.dim())));
}

AmplifierCircuit AmplifierCircuit::adjoint() const {
    AmplifierCircuit out = *this;
    out.stages.clear();
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        Stage s = *it;
        switch (s.kind) {
        case StageKind::Prepare: s.kind = StageKind::Unprepare; break;
        case StageKind::Unprepare: s.kind = StageKind::Prepare; break;
        case StageKind::Evolve:
        case StageKind::Phase: s.t = -s.t; break;
        case StageKind::Scalar: s.scalar = std::conj(s.scalar); break;
        case StageKind::Reflect: break;
        }
        out.stages.push_back(s);
    }
    return out;
}

AmplifierCircuit amp1(const FourierHamiltonian& H, int l_max, double t, bool pbc,
                      bool with_linear_potential) {
    if (l_max < 1) throw Error(ErrorCode::InvalidConfig, "l_max must be >= 1");
    const int L = 4 * l_max;
    AmplifierCircuit c;
    c.space = SambeSpace{L, H.dim()};
    c.l_max_inner = l_max;
    c.pbc = pbc;
    c.amp1_queries = 1;
    const SambeOperator op = pbc ? build_effective_pbc(H, L) : build_effective(H, L);
    c.stages.push_back(simple_stage(StageKind::Prepare, l_max));
    c.stages.push_back(evolve_stage(op, t));
    if (with_linear_potential) c.stages.push_back(phase_stage(c.space, H.omega(), t));
    c.stages.push_back(simple_stage(StageKind::Unprepare, L));
    return c;
}

AmplifierCircuit oblivious_amplify(const AmplifierCircuit& u1) {
    AmplifierCircuit c = u1;
    const AmplifierCircuit dag = u1.adjoint();
    c.stages.push_back(simple_stage(StageKind::Reflect));
    c.stages.insert(c.stages.end(), dag.stages.begin(), dag.stages.end());
    c.stages.push_back(simple_stage(StageKind::Reflect));
    c.stages.insert(c.stages.end(), u1.stages.begin(), u1.stages.end());
    c.stages.push_back(simple_stage(StageKind::Scalar, 0, -1.0));
    c.amp1_queries = 3 * u1.amp1_queries;
    return c;
}

AmplifierCircuit amp2(const FourierHamiltonian& H, int l_max, double t, bool pbc,
                      bool with_linear_potential) {
    return oblivious_amplify(amp1(H, l_max, t, pbc, with_linear_potential));
}

AmplifierCircuit naive_circuit(const FourierHamiltonian& H, int l_max, double t) {
    if (l_max < 1) throw Error(ErrorCode::InvalidConfig, "l_max must be >= 1");
    AmplifierCircuit c;
    c.space = SambeSpace{l_max, H.dim()};
    c.l_max_inner = l_max;
    c.stages.push_back(evolve_stage(build_effective(H, l_max), t));
    c.stages.push_back(phase_stage(c.space, H.omega(), t));
    c.stages.push_back(simple_stage(StageKind::Unprepare, l_max));
    return c;
}

double success_probability(const AmplifierCircuit& c, const Vec& psi0) {
    if (psi0.size() != c.space.d) throw Error(ErrorCode::InvalidConfig, "psi0 has wrong dimension");
    Mat in = Mat::Zero(c.space.dim(), 1);
    in.block(c.space.offset(0), 0, c.space.d, 1) = psi0;
    Mat out = c.apply(in);
    return out.block(c.space.offset(0), 0, c.space.d, 1).squaredNorm();
}

SampledProbability success_probability_sampled(const AmplifierCircuit& c, const Vec& psi0,
                                               long shots, std::uint64_t seed) {
    if (shots < 1) throw Error(ErrorCode::InvalidConfig, "shots must be >= 1");
    const double p = std::clamp(success_probability(c, psi0), 0.0, 1.0);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution draw(p);
    SampledProbability out;
    out.shots = shots;
    for (long k = 0; k < shots; ++k) out.successes += draw(rng) ? 1 : 0;
    out.estimate = double(out.successes) / double(shots);
    return out;
}

std::vector<double> iterated_amplification(const FourierHamiltonian& H, int l_max, double t,
                                           int p_max, const Vec& psi0) {
    const AmplifierCircuit u = naive_circuit(H, l_max, t);
    const auto& sp = u.space;
    const Stage refl = simple_stage(StageKind::Reflect);
    Mat v = Mat::Zero(sp.dim(), 1);
    v.block(sp.offset(0), 0, sp.d, 1) = psi0;
    v = u.apply(v);
    std::vector<double> probs;
    auto record = [&] { probs.push_back(v.block(sp.offset(0), 0, sp.d, 1).squaredNorm()); };
    record();
    for (int p = 1; p <= p_max; ++p) {
        apply_stage(v, sp, refl, false);
        v = u.apply_adjoint(v);
        apply_stage(v, sp, refl, false);
        v = u.apply(v);
        record();
    }
    return probs;
}

namespace {

int pick_l_max(const FourierHamiltonian& H, double t, double epsilon, Regime regime) {
    if (const auto* e = std::get_if<ExpDecayProfile>(&H.profile()))
        return std::max(choose_l_max_exp(e->h, e->zeta, std::abs(t), epsilon, regime).l_max, H.m_max() + 1);
    const auto s = energy_scales(H);
    return choose_l_max(s.gamma_upper, std::abs(t), std::max(H.m_max(), 1), epsilon, regime).l_max;
}

PipelineResult finish(const FourierHamiltonian& H, const PipelineColumns& pc, const Vec& psi0,
                      double t, double epsilon, ResourceRegime regime, const PipelineOptions& opts) {
    if (psi0.size() != H.dim()) throw Error(ErrorCode::InvalidConfig, "psi0 has wrong dimension");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw Error(ErrorCode::InvalidConfig, "psi0 must be normalized");
    PipelineResult r;
    const auto& sp = pc.space;
    r.output = pc.columns * psi0;
    Vec block = r.output.segment(sp.offset(0), sp.d);
    r.diag.l_max = pc.l_max;
    r.diag.sambe_dim = sp.dim();
    r.diag.periods = pc.periods;
    r.diag.remainder = pc.remainder;
    r.diag.success_probability = block.squaredNorm();
    r.state = block.norm() > 0.0 ? Vec(block / block.norm()) : block;
    if (opts.compute_oracle) {
        r.exact = exact_evolve(H, psi0, t, opts.oracle_tol).vector;
        Vec ref = Vec::Zero(sp.dim());
        ref.segment(sp.offset(0), sp.d) = r.exact;
        r.diag.deviation = (r.output - ref).norm();
        r.diag.fidelity = std::abs(r.exact.dot(r.state));
    }
    const auto scales = energy_scales(H, opts.alphas);
    ResourceParams rp;
    rp.alpha = scales.alpha;
    rp.gamma = scales.gamma_upper;
    rp.omega = H.omega();
    rp.t = std::max(std::abs(t), 1e-300);
    rp.epsilon = epsilon;
    rp.m_max = std::max(H.m_max(), 1);
    rp.lambda = local_energy_scale(H);
    if (rp.alpha > 0.0 && t != 0.0) r.diag.resource = resources(regime, rp);
    return r;
}

}  // namespace

PipelineColumns adiabatic_columns(const FourierHamiltonian& H, double t, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
    PipelineColumns pc;
    pc.l_max = pick_l_max(H, t, epsilon, Regime::Adiabatic);
    const auto circ = amp2(H, pc.l_max, t, true);
    pc.space = circ.space;
    pc.columns = circ.apply_to_zero();
    return pc;
}

PipelineColumns longtime_columns(const FourierHamiltonian& H, double t, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
    const double T = H.period();
    if (t < T * (1.0 - 1e-12)) throw Error(ErrorCode::InvalidConfig, "long-time pipeline needs t >= T");
    PipelineColumns pc;
    pc.periods = std::max(1, static_cast<int>(std::floor(t / T + 1e-12)));
    pc.remainder = t / T - pc.periods;
    if (std::abs(pc.remainder) < 1e-12) pc.remainder = 0.0;
    pc.l_max = pick_l_max(H, T, epsilon / pc.periods, Regime::LongTime);
    // e^{-i H_LP T} is the identity and is left out
    const auto step = amp2(H, pc.l_max, T, true, false);
    pc.space = step.space;
    pc.columns = step.apply_to_zero();
    for (int k = 1; k < pc.periods; ++k) pc.columns = step.apply(pc.columns);
    if (pc.remainder > 0.0) pc.columns = amp2(H, pc.l_max, pc.remainder * T, true).apply(pc.columns);
    return pc;
}

PipelineResult run_adiabatic(const FourierHamiltonian& H, const Vec& psi0, double t, double epsilon,
                             const PipelineOptions& opts) {
    auto pc = adiabatic_columns(H, t, epsilon);
    auto r = finish(H, pc, psi0, t, epsilon, ResourceRegime::Adiabatic, opts);
    if (H.omega() * std::abs(t) > 4.0 * std::numbers::pi)
        r.diag.warnings.push_back("omega t exceeds 4 pi; the long-time pipeline is cheaper here");
    return r;
}

PipelineResult run_longtime(const FourierHamiltonian& H, const Vec& psi0, double t, double epsilon,
                            const PipelineOptions& opts) {
    auto pc = longtime_columns(H, t, epsilon);
    return finish(H, pc, psi0, t, epsilon, ResourceRegime::LongTime, opts);
}

}  // namespace fqs
