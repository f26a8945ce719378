#pragma once
/**
 * @file instance.hpp
 * @brief Instance loading: CBF-subset parsing, standard-form conversion,
 *        and implied-integer detection.
 *
 * Instances arrive as CBF text (a whitespace-delimited ASCII format with
 * `#` comments) restricted to the keywords VER, OBJSENSE, VAR, INT, CON,
 * OBJACOORD, ACOORD, BCOORD and the cone tags F, L+, L-, L=, Q, QR.
 * Constraint rows have the semantics (A x + b) in cone.
 *
 * to_standard_form rewrites everything as
 *
 *     min c'x   s.t.  A x = b,  x in K,  x_j integer for marked j,
 *
 * by appending one slack variable per non-trivial constraint row (original
 * variables first, then slacks in row order — a convention recorded in the
 * JSON dump), rotating rotated-quadratic blocks onto plain second-order
 * blocks, and normalizing the objective sense to minimization.
 */

#include "coniccut/cones.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coniccut {

/// Syntax or indexing error in an input document, with its 1-based line.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Semantically invalid instance (e.g. integrality marks on coordinates
/// that a cone rewrite must linearly mix).
class InstanceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ObjectiveSense { Minimize, Maximize };

/// Cone tags as they appear in CBF documents.  Distinct from ConeKind
/// because CBF has a fixed-to-zero tag (L=) that the equality-form model
/// expresses through rows rather than through a cone block.
enum class CbfCone { Free, NonNeg, NonPos, Zero, Quad, RotatedQuad };

const char* cbf_cone_tag(CbfCone cone);  // "F", "L+", "L-", "L=", "Q", "QR"

struct RawBlock {
    CbfCone cone;
    int dim;
};

/// A parsed CBF document, kept close to the file's own structure.
struct RawInstance {
    ObjectiveSense sense = ObjectiveSense::Minimize;
    int num_vars = 0;
    int num_rows = 0;
    std::vector<RawBlock> var_blocks;  // variable cone blocks, in order
    std::vector<RawBlock> row_blocks;  // constraint cone blocks, in order
    std::vector<int> integers;         // 0-based variable indices
    std::vector<std::pair<int, double>> obj_coeffs;  // (j, value)
    std::vector<Triplet> coeffs;                     // (i, j, value)
    std::vector<std::pair<int, double>> rhs;         // (i, value) for b
};

/// Eq-form conic instance: min c'x s.t. Ax = b, x in K, with integrality.
struct StandardProblem {
    Vector c;
    SparseMatrix A;
    Vector b;
    ConeProduct K;
    std::vector<bool> integer_mask;          // declared integers
    std::vector<bool> implied_integer_mask;  // detected, disjoint from above
    double obj_sign = 1.0;    // original objective = obj_sign * (c'x)
    double obj_offset = 0.0;  // plus this constant
    std::vector<std::string> names;  // optional variable labels

    int num_vars() const { return static_cast<int>(c.size()); }
    int num_rows() const { return static_cast<int>(b.size()); }
};

RawInstance parse_cbf(std::istream& in);
RawInstance parse_cbf_string(const std::string& text);
RawInstance parse_cbf_file(const std::string& path);

StandardProblem to_standard_form(const RawInstance& raw);

/// Fixed point of the propagation rule: a continuous variable y becomes
/// implied-integer when some row reads a'x +/- y = b with b integral, every
/// coefficient of a integral, and every other variable of the row integer
/// or already implied-integer.  Returns a mask disjoint from integer_mask.
std::vector<bool> detect_implied_integers(const StandardProblem& problem);

/// Rows whose removal does not change the solution set (rank-revealing QR
/// flagger).  Informational only; nothing is removed automatically.
std::vector<int> redundant_rows(const StandardProblem& problem);

/// Canonical JSON dump of a StandardProblem, used by golden tests and the
/// `standardize` CLI subcommand.
std::string to_json(const StandardProblem& problem);

}  // namespace coniccut
