// Canonical JSON dump of a StandardProblem.  Keys keep insertion order and
// matrix entries are sorted by (row, column), so equal problems always
// serialize to byte-identical text — the `standardize` CLI subcommand and
// the golden tests rely on that.

#include "coniccut/instance.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <tuple>
#include <vector>

namespace coniccut {

std::string to_json(const StandardProblem& problem) {
    using json = nlohmann::ordered_json;

    json doc;
    doc["num_vars"] = problem.num_vars();
    doc["num_rows"] = problem.num_rows();

    json objective;
    objective["sign"] = problem.obj_sign;
    objective["offset"] = problem.obj_offset;
    objective["coefficients"] = std::vector<double>(
        problem.c.data(), problem.c.data() + problem.c.size());
    doc["objective"] = objective;

    json cones = json::array();
    for (const Cone& blk : problem.K.blocks()) {
        json one;
        one["kind"] = cone_kind_name(blk.kind);
        one["dim"] = blk.dim;
        cones.push_back(one);
    }
    doc["cones"] = cones;

    std::vector<std::tuple<int, int, double>> entries;
    entries.reserve(static_cast<std::size_t>(problem.A.nonZeros()));
    for (int j = 0; j < problem.A.outerSize(); ++j) {
        for (SparseMatrix::InnerIterator it(problem.A, j); it; ++it) {
            entries.emplace_back(static_cast<int>(it.row()),
                                 static_cast<int>(it.col()), it.value());
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(std::get<0>(a), std::get<1>(a)) <
                         std::tie(std::get<0>(b), std::get<1>(b));
              });
    json rows;
    rows["b"] = std::vector<double>(problem.b.data(),
                                    problem.b.data() + problem.b.size());
    json entry_list = json::array();
    for (const auto& [i, j, v] : entries) {
        entry_list.push_back(json::array({i, j, v}));
    }
    rows["entries"] = entry_list;
    doc["rows"] = rows;

    std::vector<int> integers, implied;
    for (int j = 0; j < problem.num_vars(); ++j) {
        if (problem.integer_mask[static_cast<std::size_t>(j)]) {
            integers.push_back(j);
        }
        if (problem.implied_integer_mask.size() >
                static_cast<std::size_t>(j) &&
            problem.implied_integer_mask[static_cast<std::size_t>(j)]) {
            implied.push_back(j);
        }
    }
    doc["integers"] = integers;
    doc["implied_integers"] = implied;
    if (!problem.names.empty()) doc["names"] = problem.names;

    return doc.dump(2);
}

}  // namespace coniccut
