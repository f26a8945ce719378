// Implied-integer propagation and redundant-row flagging.
//
// A continuous variable y is implied-integer when some equality row reads
// a'x +/- y = b with b integral, every coefficient of a integral, and every
// variable of a integer or already implied-integer.  The rule is applied
// until no additional variable is detected.

#include "coniccut/instance.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cmath>
#include <cstdlib>
#include <vector>

namespace coniccut {

namespace {

constexpr double kIntegralityTol = 1e-9;
constexpr double kStructuralZero = 1e-12;

bool is_integral(double v) {
    return std::abs(v - std::round(v)) <= kIntegralityTol;
}

}  // namespace

std::vector<bool> detect_implied_integers(const StandardProblem& problem) {
    const int n = problem.num_vars();
    const int m = problem.num_rows();

    struct Entry {
        int col;
        double val;
    };
    std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(m));
    for (int j = 0; j < problem.A.outerSize(); ++j) {
        for (SparseMatrix::InnerIterator it(problem.A, j); it; ++it) {
            if (std::abs(it.value()) < kStructuralZero) continue;
            rows[static_cast<std::size_t>(it.row())].push_back(
                Entry{static_cast<int>(it.col()), it.value()});
        }
    }

    std::vector<bool> known(problem.integer_mask);
    known.resize(static_cast<std::size_t>(n), false);
    std::vector<bool> implied(static_cast<std::size_t>(n), false);

    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < m; ++i) {
            if (!is_integral(problem.b(i))) continue;
            const auto& row = rows[static_cast<std::size_t>(i)];
            int candidate = -1;
            bool eligible = true;
            for (const Entry& e : row) {
                if (!known[static_cast<std::size_t>(e.col)]) {
                    if (candidate >= 0) {  // more than one unknown variable
                        eligible = false;
                        break;
                    }
                    candidate = e.col;
                    if (std::abs(std::abs(e.val) - 1.0) > kIntegralityTol) {
                        eligible = false;
                        break;
                    }
                } else if (!is_integral(e.val)) {
                    eligible = false;
                    break;
                }
            }
            if (eligible && candidate >= 0) {
                implied[static_cast<std::size_t>(candidate)] = true;
                known[static_cast<std::size_t>(candidate)] = true;
                changed = true;
            }
        }
    }
    return implied;
}

std::vector<int> redundant_rows(const StandardProblem& problem) {
    const int m = problem.num_rows();
    const int n = problem.num_vars();
    if (m == 0) return {};

    Eigen::MatrixXd at = Eigen::MatrixXd(problem.A).transpose();  // n x m
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(at);
    const int rank = static_cast<int>(qr.rank());
    if (rank >= m) return {};

    const auto& perm = qr.colsPermutation().indices();
    std::vector<int> flagged;
    flagged.reserve(static_cast<std::size_t>(m - rank));
    for (int k = rank; k < m; ++k) flagged.push_back(perm(k));
    std::sort(flagged.begin(), flagged.end());
    (void)n;
    return flagged;
}

}  // namespace coniccut
