#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "synaptic/errors.hpp"

namespace synaptic {

/// Unvalidated partial orthosum table; -1 marks an undefined entry.
struct RawEffectTable {
    int size = 0;
    int zero = 0;
    int one = 0;
    std::vector<std::vector<int>> osum;
};

struct AxiomViolation {
    std::string axiom;              // "EA1".."EA4" or "table"
    std::array<int, 3> witness;     // offending elements, -1 where unused
    std::string detail;
};

/// A finite effect algebra validated against EA1-EA4, with the derived
/// partial order, orthosupplement and brute-force lattice queries.
class FiniteEffectAlgebra {
public:
    static std::vector<AxiomViolation> check(const RawEffectTable& raw);
    static FiniteEffectAlgebra validate(const RawEffectTable& raw);

    int size() const { return raw_.size; }
    int zero() const { return raw_.zero; }
    int one() const { return raw_.one; }

    bool defined(int a, int b) const { return raw_.osum[a][b] >= 0; }
    int osum(int a, int b) const { return raw_.osum[a][b]; }
    int oprime(int a) const { return oprime_[a]; }

    bool leq(int a, int b) const { return leq_[a][b]; }
    /// b ominus a; requires a <= b.
    int ominus(int b, int a) const;

    std::optional<int> meet(int a, int b) const;
    std::optional<int> join(int a, int b) const;

    /// a is sharp iff a meet a' = 0; throws MeetUndefined if the meet is missing.
    bool is_sharp(int a) const;

    /// Mackey compatibility: a = a1 + g, b = b1 + g with a1 + b1 + g defined.
    bool are_compatible(int a, int b) const;

private:
    explicit FiniteEffectAlgebra(RawEffectTable raw);

    RawEffectTable raw_;
    std::vector<int> oprime_;
    std::vector<std::vector<bool>> leq_;
};

struct ClassifyReport {
    bool is_lattice = true;
    bool is_mv = true;
    bool is_oml = true;        // restricted to the sharp elements
    bool is_boolean = true;
    bool is_orthocomplete = true;   // finite algebras always are

    std::optional<std::array<int, 2>> lattice_witness;
    std::optional<std::array<int, 2>> mv_witness;       // incompatible pair
    std::optional<std::array<int, 2>> oml_witness;
    std::optional<int> boolean_witness;                 // an unsharp element
};

ClassifyReport classify(const FiniteEffectAlgebra& L);

struct EAState {
    std::vector<double> values;   // one value in [0,1] per carrier element
};

/// Checks the state conditions s(1)=1 and additivity on defined orthosums.
bool is_valid_state(const FiniteEffectAlgebra& L, const EAState& s);

/// a <= b iff s(a) <= s(b) for every s in S, both directions.
bool states_ordering(const FiniteEffectAlgebra& L, const std::vector<EAState>& S);

/// s(a) = s(b) for all s in S implies a = b.
bool states_separating(const FiniteEffectAlgebra& L, const std::vector<EAState>& S);

} // namespace synaptic
