#pragma once

namespace synaptic {

// Global numeric tolerances. All equality-like predicates in the library are
// tolerance-based; residuals are normalized by the operand norms whenever
// those exceed 1.
struct Tolerances {
    double hermitian = 1e-9;       // hermiticity residual
    double projection = 1e-9;      // idempotency / positivity slack
    double commutation = 1e-9;     // commutator residual
    double eigen_cluster = 1e-8;   // relative eigenvalue clustering width
};

// Mutable process-wide configuration. Intended to be set once at startup
// (the CLI does this from --tol) before any computation runs; the library
// itself only reads it.
Tolerances& tolerances();

} // namespace synaptic
