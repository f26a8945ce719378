#include "coniccut/model.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace coniccut {

namespace {

constexpr double kDualTol = 1e-7;        // multiplier cone membership
constexpr double kCertTol = 1e-6;        // aggregation identity / rhs bound
constexpr double kIntegralTol = 1e-6;    // "already integral" rejection

}  // namespace

const char* cut_class_name(CutClass c) {
    switch (c) {
        case CutClass::LiftAndProject: return "lift-and-project";
        case CutClass::KStar: return "kstar";
        case CutClass::None: return "none";
    }
    return "?";
}

std::pair<Vector, double> farkas_aggregate(const StandardProblem& problem,
                                           const Vector& u,
                                           const Vector& lambda) {
    if (u.size() != problem.num_rows() || lambda.size() != problem.num_vars()) {
        throw std::invalid_argument("farkas_aggregate: dimension mismatch");
    }
    if (!dual_membership(problem.K, lambda, kDualTol)) {
        throw std::invalid_argument(
            "farkas_aggregate: lambda is not in the dual cone");
    }
    Vector alpha = lambda;
    if (problem.num_rows() > 0) alpha += problem.A.transpose() * u;
    double beta = problem.num_rows() > 0 ? problem.b.dot(u) : 0.0;
    return {alpha, beta};
}

Disjunction split_from_direction(const Vector& pi, long long pi0) {
    const int n = static_cast<int>(pi.size());
    Disjunction disj;
    disj.terms.resize(2);

    std::vector<Triplet> lower, upper;
    for (int j = 0; j < n; ++j) {
        if (pi(j) != 0.0) {
            lower.emplace_back(0, j, -pi(j));
            upper.emplace_back(0, j, pi(j));
        }
    }
    DisjunctiveTerm& t1 = disj.terms[0];  // pi'x <= pi0
    t1.D.resize(1, n);
    t1.D.setFromTriplets(lower.begin(), lower.end());
    t1.d = Vector::Constant(1, -static_cast<double>(pi0));
    t1.Q.push_block(Cone{ConeKind::NonNeg, 1});
    t1.sigma.rho = Vector::Ones(1);

    DisjunctiveTerm& t2 = disj.terms[1];  // pi'x >= pi0 + 1
    t2.D.resize(1, n);
    t2.D.setFromTriplets(upper.begin(), upper.end());
    t2.d = Vector::Constant(1, static_cast<double>(pi0) + 1.0);
    t2.Q.push_block(Cone{ConeKind::NonNeg, 1});
    t2.sigma.rho = Vector::Ones(1);
    return disj;
}

Disjunction elementary_split(const StandardProblem& problem, int j,
                             double xbar_j) {
    if (j < 0 || j >= problem.num_vars()) {
        throw std::invalid_argument("elementary_split: variable index " +
                                    std::to_string(j) + " out of range");
    }
    const bool integral_var =
        problem.integer_mask[static_cast<std::size_t>(j)] ||
        (problem.implied_integer_mask.size() > static_cast<std::size_t>(j) &&
         problem.implied_integer_mask[static_cast<std::size_t>(j)]);
    if (!integral_var) {
        throw std::invalid_argument(
            "elementary_split: variable " + std::to_string(j) +
            " carries no integrality requirement");
    }
    if (std::abs(xbar_j - std::round(xbar_j)) <= kIntegralTol) {
        throw std::invalid_argument(
            "elementary_split: value " + std::to_string(xbar_j) +
            " is already integral, no split is violated");
    }
    Vector pi = Vector::Zero(problem.num_vars());
    pi(j) = 1.0;
    const long long pi0 = static_cast<long long>(std::floor(xbar_j));
    Disjunction disj = split_from_direction(pi, pi0);
    disj.split_tag = SplitTag{j, pi0, pi};
    return disj;
}

CutCandidate shift_equivalent(const StandardProblem& problem,
                              const CutCandidate& cut, const Vector& u0) {
    if (u0.size() != problem.num_rows()) {
        throw std::invalid_argument("shift_equivalent: u0 has wrong size");
    }
    CutCandidate shifted = cut;
    if (problem.num_rows() > 0) {
        shifted.alpha -= problem.A.transpose() * u0;
        shifted.beta -= problem.b.dot(u0);
        for (Vector& uh : shifted.u) {
            if (uh.size() == u0.size()) uh -= u0;
        }
    }
    return shifted;
}

bool cut_certificate_ok(const StandardProblem& problem,
                        const Disjunction& disjunction,
                        const CutCandidate& cut, std::string* why) {
    auto reject = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    const int H = disjunction.term_count();
    if (static_cast<int>(cut.u.size()) != H ||
        static_cast<int>(cut.lambda.size()) != H ||
        static_cast<int>(cut.v.size()) != H) {
        return reject("multiplier lists do not match the term count");
    }
    const double alpha_scale = 1.0 + cut.alpha.cwiseAbs().maxCoeff();
    for (int h = 0; h < H; ++h) {
        const DisjunctiveTerm& term = disjunction.terms[h];
        Vector agg = cut.lambda[h];
        if (problem.num_rows() > 0) agg += problem.A.transpose() * cut.u[h];
        if (term.D.rows() > 0) agg += term.D.transpose() * cut.v[h];
        const double mismatch = (cut.alpha - agg).cwiseAbs().maxCoeff();
        if (mismatch > kCertTol * alpha_scale) {
            return reject("term " + std::to_string(h) +
                          ": aggregation identity off by " +
                          std::to_string(mismatch));
        }
        double rhs = term.d.size() > 0 ? term.d.dot(cut.v[h]) : 0.0;
        if (problem.num_rows() > 0) rhs += problem.b.dot(cut.u[h]);
        if (cut.beta > rhs + kCertTol) {
            return reject("term " + std::to_string(h) +
                          ": beta exceeds the certified bound by " +
                          std::to_string(cut.beta - rhs));
        }
        if (!dual_membership(problem.K, cut.lambda[h], kDualTol)) {
            return reject("term " + std::to_string(h) +
                          ": lambda leaves the dual cone");
        }
        if (!dual_membership(term.Q, cut.v[h], kDualTol)) {
            return reject("term " + std::to_string(h) +
                          ": v leaves the dual of the term cone");
        }
    }
    if (why) why->clear();
    return true;
}

std::string cut_to_json(const CutCandidate& cut) {
    using json = nlohmann::ordered_json;
    json doc;
    json alpha = json::array();
    for (int j = 0; j < cut.alpha.size(); ++j) {
        if (cut.alpha(j) != 0.0) {
            alpha.push_back(json::array({j, cut.alpha(j)}));
        }
    }
    doc["alpha"] = alpha;
    doc["beta"] = cut.beta;
    doc["violation"] = cut.violation;
    doc["classification"] = cut_class_name(cut.classification);
    doc["normalization"] = cut.normalization;
    doc["strengthened"] = cut.strengthened;
    doc["lifted"] = cut.lifted;
    if (cut.pi_tilde) {
        json pi = json::array();
        for (int j = 0; j < cut.pi_tilde->size(); ++j) {
            if ((*cut.pi_tilde)(j) != 0.0) {
                pi.push_back(json::array({j, (*cut.pi_tilde)(j)}));
            }
        }
        doc["pi_tilde"] = pi;
    }
    return doc.dump();
}

}  // namespace coniccut
