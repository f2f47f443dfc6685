#include "oracle.hpp"

#include <stdexcept>

namespace hdqltest {

using hdql::syntax::Action;
using hdql::syntax::Sentence;
using hdql::syntax::Term;
using SK = Sentence::Kind;

Mat orthonormal_columns(const Mat& spanning, double eps) {
    if (spanning.cols() == 0) return Mat(spanning.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(spanning, Eigen::ComputeThinU);
    Eigen::Index r = 0;
    const auto& s = svd.singularValues();
    while (r < s.size() && s(r) > eps * std::max(1.0, s(0))) ++r;
    return svd.matrixU().leftCols(r);
}

Mat projector_onto(const Mat& spanning, double eps) {
    const Mat b = orthonormal_columns(spanning, eps);
    return b * b.adjoint();
}

namespace {

Mat complement(const Mat& p) { return Mat::Identity(p.rows(), p.cols()) - p; }

// Eigenvectors of (P+Q)/2 with eigenvalue 1 span the intersection.
Mat meet(const Mat& p, const Mat& q) {
    Eigen::SelfAdjointEigenSolver<Mat> es((p + q) / 2.0);
    Mat cols(p.rows(), 0);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) > 1.0 - 1e-7) {
            cols.conservativeResize(Eigen::NoChange, cols.cols() + 1);
            cols.col(cols.cols() - 1) = es.eigenvectors().col(i);
        }
    }
    return projector_onto(cols);
}

Mat unitary_of(const hdql::Signature& sig, const std::string& f) {
    auto it = sig.unitaries().find(f);
    if (it == sig.unitaries().end()) throw std::runtime_error("oracle: not a unitary: " + f);
    return it->second.entries();
}

Mat pre(const hdql::Signature& sig, const Action& a, const Mat& p) {
    switch (a.kind()) {
        case Action::Kind::Symbol: {
            const Mat u = unitary_of(sig, a.name());
            return u.adjoint() * p * u;
        }
        case Action::Kind::Comp: return pre(sig, a.lhs(), pre(sig, a.rhs(), p));
        case Action::Kind::Union: return meet(pre(sig, a.lhs(), p), pre(sig, a.rhs(), p));
        case Action::Kind::Star: {
            Mat y = p;
            for (;;) {
                Mat next = meet(y, pre(sig, a.body(), y));
                if (std::abs(next.trace().real() - y.trace().real()) < 0.5) return next;
                y = next;
            }
        }
    }
    throw std::runtime_error("oracle: bad action");
}

}  // namespace

Mat oracle_projector(const hdql::Signature& sig, const std::map<std::string, Mat>& props, const Sentence& rho) {
    switch (rho.kind()) {
        case SK::Prop: return props.at(rho.name());
        case SK::QNot: return complement(oracle_projector(sig, props, rho.body()));
        case SK::And: return meet(oracle_projector(sig, props, rho.lhs()), oracle_projector(sig, props, rho.rhs()));
        case SK::QOr:
            return complement(meet(complement(oracle_projector(sig, props, rho.lhs())),
                                   complement(oracle_projector(sig, props, rho.rhs()))));
        case SK::QImp: {
            const Mat a = oracle_projector(sig, props, rho.lhs());
            const Mat b = oracle_projector(sig, props, rho.rhs());
            return complement(meet(a, complement(meet(a, b))));
        }
        case SK::Nec: return pre(sig, rho.action(), oracle_projector(sig, props, rho.body()));
        default: throw std::runtime_error("oracle: not a closed sentence");
    }
}

std::map<std::string, Mat> prop_projectors(const hdql::semantics::QuantumModel& m) {
    std::map<std::string, Mat> out;
    const auto n = static_cast<Eigen::Index>(m.sig().dim());
    for (const auto& p : m.sig().closed_props()) {
        const auto& basis = m.region(p).subspace().basis();
        Mat cols(n, static_cast<Eigen::Index>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = basis[i].coords();
        out[p] = projector_onto(cols);
    }
    return out;
}

Vec oracle_step(const hdql::Signature& sig, const std::string& f, const Vec& w) {
    if (auto it = sig.unitaries().find(f); it != sig.unitaries().end()) return it->second.entries() * w;
    auto q = sig.measurements().find(f);
    if (q == sig.measurements().end()) throw std::runtime_error("oracle: unknown action " + f);
    const auto& declared = q->second.declared;
    Mat cols(w.size(), static_cast<Eigen::Index>(declared.size()));
    for (std::size_t i = 0; i < declared.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = declared[i].coords();
    const Vec pw = projector_onto(cols) * w;
    const double n2 = w.dot(pw).real();
    if (pw.norm() <= 1e-9 || n2 <= 0) return Vec::Zero(w.size());
    return pw / std::sqrt(n2);
}

// ------------------------------------------------------------ least model

namespace {

bool near(const Vec& a, const Vec& b) { return (a - b).norm() <= 1e-9 * std::max(1.0, a.norm()); }

bool rooted(const Sentence& s) {
    switch (s.kind()) {
        case SK::At: return true;
        case SK::And: return rooted(s.lhs()) && rooted(s.rhs());
        case SK::Store: return rooted(s.body());
        default: return false;
    }
}

}  // namespace

LeastModel::LeastModel(const hdql::Signature& sig, const std::vector<Sentence>& gamma) : sig_(sig) {
    for (const auto& p : sig.props()) facts_[p];
    for (const auto& g : gamma) {
        if (!rooted(g)) throw std::runtime_error("oracle: axiom is not @-rooted");
        Env env;
        force(Vec::Zero(static_cast<Eigen::Index>(sig.dim())), g, env);
    }
}

Vec LeastModel::eval_env(const Term& k, const Env& env) const {
    switch (k.kind()) {
        case Term::Kind::Ident: {
            if (auto it = env.find(k.name()); it != env.end()) return it->second;
            return sig_.vectors().at(k.name()).coords();
        }
        case Term::Kind::Literal: return k.literal_value().coords();
        case Term::Kind::Origin: return Vec::Zero(static_cast<Eigen::Index>(sig_.dim()));
        case Term::Kind::Sum: return eval_env(k.lhs(), env) + eval_env(k.rhs(), env);
        case Term::Kind::Scale: {
            const auto& s = k.scalar();
            const hdql::Complex c = s.is_named() ? sig_.scalars().at(s.name) : s.value;
            return c * eval_env(k.arg(), env);
        }
        case Term::Kind::Apply: return oracle_step(sig_, k.name(), eval_env(k.arg(), env));
    }
    throw std::runtime_error("oracle: bad term");
}

Vec LeastModel::eval(const Term& k) const { return eval_env(k, {}); }

std::vector<Vec> LeastModel::successors(const Action& a, const Vec& w) const {
    switch (a.kind()) {
        case Action::Kind::Symbol: return {oracle_step(sig_, a.name(), w)};
        case Action::Kind::Union: {
            auto l = successors(a.lhs(), w);
            for (auto& v : successors(a.rhs(), w)) l.push_back(std::move(v));
            return l;
        }
        case Action::Kind::Comp: {
            std::vector<Vec> out;
            for (const auto& m : successors(a.lhs(), w)) {
                for (auto& v : successors(a.rhs(), m)) out.push_back(std::move(v));
            }
            return out;
        }
        case Action::Kind::Star: throw std::runtime_error("oracle: star is not supported");
    }
    return {};
}

void LeastModel::force(const Vec& w, const Sentence& s, Env& env) {
    switch (s.kind()) {
        case SK::Prop: {
            auto& fs = facts_[s.name()];
            for (const auto& f : fs) {
                if (near(f, w)) return;
            }
            fs.push_back(w);
            return;
        }
        case SK::And:
            force(w, s.lhs(), env);
            force(w, s.rhs(), env);
            return;
        case SK::At: force(eval_env(s.term(), env), s.body(), env); return;
        case SK::Nec:
            for (const auto& v : successors(s.action(), w)) force(v, s.body(), env);
            return;
        case SK::Store: {
            Env inner = env;
            inner[s.name()] = w;
            force(w, s.body(), inner);
            return;
        }
        default: throw std::runtime_error("oracle: axiom outside the positive fragment");
    }
}

bool LeastModel::holds(const std::string& p, const Vec& w) const {
    const auto& fs = facts_.at(p);
    if (sig_.is_closed(p)) {
        const auto n = static_cast<Eigen::Index>(sig_.dim());
        Mat cols(n, static_cast<Eigen::Index>(fs.size()));
        for (std::size_t i = 0; i < fs.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = fs[i];
        const Vec r = w - projector_onto(cols) * w;
        return r.norm() <= 1e-9 * std::max(1.0, w.norm());
    }
    for (const auto& f : fs) {
        if (near(f, w)) return true;
    }
    return false;
}

bool LeastModel::sat_env(const Vec& w, const Sentence& s, Env& env) const {
    switch (s.kind()) {
        case SK::Prop: return holds(s.name(), w);
        case SK::And: return sat_env(w, s.lhs(), env) && sat_env(w, s.rhs(), env);
        case SK::At: return sat_env(eval_env(s.term(), env), s.body(), env);
        case SK::Nec: {
            for (const auto& v : successors(s.action(), w)) {
                if (!sat_env(v, s.body(), env)) return false;
            }
            return true;
        }
        case SK::Store: {
            Env inner = env;
            inner[s.name()] = w;
            return sat_env(w, s.body(), inner);
        }
        default: throw std::runtime_error("oracle: goal outside the positive fragment");
    }
}

bool LeastModel::sat(const Vec& w, const Sentence& s) const {
    Env env;
    return sat_env(w, s, env);
}

hdql::semantics::QuantumModel LeastModel::to_model() const {
    std::map<std::string, hdql::semantics::Region> val;
    for (const auto& [p, fs] : facts_) {
        std::vector<hdql::Vector> vs;
        for (const auto& f : fs) vs.emplace_back(f);
        if (sig_.is_closed(p)) {
            val[p] = hdql::semantics::Region::span(hdql::hilbert::orthonormalize(sig_.dim(), vs));
        } else {
            val[p] = hdql::semantics::Region::finite(vs);
        }
    }
    return hdql::semantics::QuantumModel(sig_, val);
}

}  // namespace hdqltest
