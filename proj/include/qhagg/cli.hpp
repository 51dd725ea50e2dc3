#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qhagg/aggregation.hpp"
#include "qhagg/catalog.hpp"
#include "qhagg/verify.hpp"

namespace qhagg::cli {

/// Exit codes are part of the command-line contract.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// A user-supplied specification is malformed (exit code 2).
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A well-formed specification describes a function that breaks a required
/// property, e.g. an invalid triple (exit code 1).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CatalogRef {
    std::string name;
    CatalogParams params;
};
struct TripleSpec {
    std::string f;
    std::string g;
    std::string h;
};
struct FlatSpec {
    double alpha = 0.0;
    double beta = 0.0;
};
struct BoundarySpec {
    std::string g;
    std::string h;
};
/// A(x,y) = combine(u(x), v(y)).
struct Expr2dSpec {
    std::string combine;
    std::string u;
    std::string v;
};
struct TableSpec {
    std::string path;
};

using FunctionSpec =
    std::variant<CatalogRef, TripleSpec, FlatSpec, BoundarySpec, Expr2dSpec, TableSpec>;

struct BuildOptions {
    /// Use the bare triple formula instead of rejecting invalid triples.
    bool raw_triple = false;
};

/// Throws SpecError for malformed input and ValidationError for functions
/// that fail their structural checks.
AggregationFunction build_function(const FunctionSpec& spec, BuildOptions options = {});

/// JSON function-spec files, e.g.
///   {"catalog": "flat", "params": {"alpha": 0.2, "beta": 0.7}}
///   {"kind": "triple", "f": "x", "g": "x", "h": "2*x/(1+x)"}
///   {"kind": "flat", "alpha": 0.2, "beta": 0.7}
///   {"kind": "boundary", "g": "x^2", "h": "x"}
///   {"kind": "expr2d", "combine": "mean", "u": "x", "v": "x"}
///   {"kind": "table", "path": "grid.csv"}
FunctionSpec parse_spec_json(std::string_view text);
FunctionSpec load_spec_file(const std::string& path);

/// `key=value` tokens, e.g. {"f=x", "g=x", "h=x^2"}.
TripleSpec parse_triple_tokens(const std::vector<std::string>& tokens);
Expr2dSpec parse_expr2d_tokens(const std::vector<std::string>& tokens);

/// `power:c=<num>`, `step0` or `step1`.
PsiSpec parse_psi(const std::string& text);
/// phi as an expression; `b_text` is empty (b = phi(1)), a positive number,
/// or `inf` (phi is then evaluated on [0,1) only).
PhiSpec parse_phi(const std::string& text, const std::string& b_text);

// ---------------------------------------------------------------------------
// Grid dumps: CSV with header `x,y,value`, (n+1)^2 rows in lexicographic
// (x, y) order, shortest round-trip decimals.

void write_grid_csv(std::ostream& out, const AggregationFunction& a, std::size_t n);

struct GridDump {
    std::size_t n = 0;
    std::vector<double> values;  // row-major in x then y
};

/// Throws SpecError when the header, row count, ordering or coordinates do
/// not match a grid dump.
GridDump read_grid_csv(std::istream& in);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhagg::cli
