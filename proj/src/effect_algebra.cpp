#include "synaptic/effect_algebra.hpp"

#include <cmath>
#include <sstream>

namespace synaptic {

namespace {

bool table_well_formed(const RawEffectTable& raw, std::vector<AxiomViolation>* out) {
    if (raw.size < 1 || raw.zero < 0 || raw.zero >= raw.size || raw.one < 0 ||
        raw.one >= raw.size) {
        out->push_back({"table", {-1, -1, -1}, "size or distinguished elements out of range"});
        return false;
    }
    if (raw.osum.size() != static_cast<std::size_t>(raw.size)) {
        out->push_back({"table", {-1, -1, -1}, "osum table has wrong row count"});
        return false;
    }
    for (int a = 0; a < raw.size; ++a) {
        if (raw.osum[a].size() != static_cast<std::size_t>(raw.size)) {
            out->push_back({"table", {a, -1, -1}, "osum table has wrong column count"});
            return false;
        }
        for (int b = 0; b < raw.size; ++b) {
            const int v = raw.osum[a][b];
            if (v < -1 || v >= raw.size) {
                out->push_back({"table", {a, b, -1}, "osum entry out of range"});
                return false;
            }
        }
    }
    return true;
}

} // namespace

std::vector<AxiomViolation> FiniteEffectAlgebra::check(const RawEffectTable& raw) {
    std::vector<AxiomViolation> out;
    if (!table_well_formed(raw, &out)) return out;
    const int n = raw.size;
    const auto& t = raw.osum;
    const auto defined = [&](int a, int b) { return t[a][b] >= 0; };

    // EA1
    for (int a = 0; a < n && out.empty(); ++a) {
        for (int b = 0; b < n; ++b) {
            if (defined(a, b) != defined(b, a) ||
                (defined(a, b) && t[a][b] != t[b][a])) {
                out.push_back({"EA1", {a, b, -1}, "orthosum is not commutative"});
                break;
            }
        }
    }
    // EA2
    for (int a = 0; a < n && out.empty(); ++a) {
        for (int b = 0; b < n && out.empty(); ++b) {
            for (int c = 0; c < n; ++c) {
                if (!defined(b, c) || !defined(a, t[b][c])) continue;
                if (!defined(a, b) || !defined(t[a][b], c) ||
                    t[t[a][b]][c] != t[a][t[b][c]]) {
                    out.push_back({"EA2", {a, b, c}, "orthosum is not associative"});
                    break;
                }
            }
        }
    }
    // EA3
    for (int a = 0; a < n && out.empty(); ++a) {
        int found = -1;
        for (int b = 0; b < n; ++b) {
            if (defined(a, b) && t[a][b] == raw.one) {
                if (found >= 0) {
                    out.push_back({"EA3", {a, found, b}, "two orthosupplements"});
                    break;
                }
                found = b;
            }
        }
        if (out.empty() && found < 0) {
            out.push_back({"EA3", {a, -1, -1}, "no orthosupplement"});
        }
    }
    // EA4
    for (int a = 0; a < n && out.empty(); ++a) {
        if (defined(raw.one, a) && a != raw.zero) {
            out.push_back({"EA4", {raw.one, a, -1}, "1 + a defined for a != 0"});
        }
    }
    return out;
}

FiniteEffectAlgebra FiniteEffectAlgebra::validate(const RawEffectTable& raw) {
    const auto violations = check(raw);
    if (!violations.empty()) {
        const auto& v = violations.front();
        std::ostringstream os;
        os << v.axiom << " violated (" << v.detail << "; witness";
        for (int w : v.witness) {
            if (w >= 0) os << ' ' << w;
        }
        os << ')';
        throw EffectAlgebraError(os.str());
    }
    return FiniteEffectAlgebra(raw);
}

FiniteEffectAlgebra::FiniteEffectAlgebra(RawEffectTable raw) : raw_(std::move(raw)) {
    const int n = raw_.size;
    oprime_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (defined(a, b) && osum(a, b) == raw_.one) oprime_[a] = b;
        }
    }
    leq_.assign(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
        for (int c = 0; c < n; ++c) {
            if (defined(a, c)) leq_[a][osum(a, c)] = true;
        }
    }
}

int FiniteEffectAlgebra::ominus(int b, int a) const {
    for (int c = 0; c < size(); ++c) {
        if (defined(a, c) && osum(a, c) == b) return c;
    }
    throw Error("ominus requires a <= b");
}

std::optional<int> FiniteEffectAlgebra::meet(int a, int b) const {
    std::vector<int> lower;
    for (int c = 0; c < size(); ++c) {
        if (leq_[c][a] && leq_[c][b]) lower.push_back(c);
    }
    for (int c : lower) {
        bool greatest = true;
        for (int d : lower) {
            if (!leq_[d][c]) { greatest = false; break; }
        }
        if (greatest) return c;
    }
    return std::nullopt;
}

std::optional<int> FiniteEffectAlgebra::join(int a, int b) const {
    std::vector<int> upper;
    for (int c = 0; c < size(); ++c) {
        if (leq_[a][c] && leq_[b][c]) upper.push_back(c);
    }
    for (int c : upper) {
        bool least = true;
        for (int d : upper) {
            if (!leq_[c][d]) { least = false; break; }
        }
        if (least) return c;
    }
    return std::nullopt;
}

bool FiniteEffectAlgebra::is_sharp(int a) const {
    const auto m = meet(a, oprime_[a]);
    if (!m) throw MeetUndefined("a and a' have no meet");
    return *m == raw_.zero;
}

bool FiniteEffectAlgebra::are_compatible(int a, int b) const {
    for (int g = 0; g < size(); ++g) {
        for (int a1 = 0; a1 < size(); ++a1) {
            if (!defined(a1, g) || osum(a1, g) != a) continue;
            for (int b1 = 0; b1 < size(); ++b1) {
                if (!defined(b1, g) || osum(b1, g) != b) continue;
                if (!defined(a1, b1)) continue;
                if (defined(osum(a1, b1), g)) return true;
            }
        }
    }
    return false;
}

ClassifyReport classify(const FiniteEffectAlgebra& L) {
    ClassifyReport r;
    const int n = L.size();

    for (int a = 0; a < n && r.is_lattice; ++a) {
        for (int b = 0; b < n; ++b) {
            if (!L.meet(a, b) || !L.join(a, b)) {
                r.is_lattice = false;
                r.lattice_witness = {{a, b}};
                break;
            }
        }
    }
    r.is_mv = r.is_lattice;
    if (!r.is_lattice) r.mv_witness = r.lattice_witness;
    for (int a = 0; a < n && r.is_mv; ++a) {
        for (int b = 0; b < n; ++b) {
            if (!L.are_compatible(a, b)) {
                r.is_mv = false;
                r.mv_witness = {{a, b}};
                break;
            }
        }
    }

    // sharpness per element; elements whose meet with their supplement is
    // missing count as unsharp
    std::vector<bool> sharp(n, false);
    for (int a = 0; a < n; ++a) {
        const auto m = L.meet(a, L.oprime(a));
        sharp[a] = m && *m == L.zero();
    }

    // OML on the sharp part: meets/joins of sharp pairs exist and are sharp,
    // and the orthomodular law a <= b  =>  b = a v (a' ^ b) holds
    for (int a = 0; a < n && r.is_oml; ++a) {
        if (!sharp[a]) continue;
        for (int b = 0; b < n; ++b) {
            if (!sharp[b]) continue;
            const auto m = L.meet(a, b);
            const auto j = L.join(a, b);
            if (!m || !j || !sharp[*m] || !sharp[*j]) {
                r.is_oml = false;
                r.oml_witness = {{a, b}};
                break;
            }
            if (L.leq(a, b)) {
                const auto inner = L.meet(L.oprime(a), b);
                const auto outer = inner ? L.join(a, *inner) : std::nullopt;
                if (!outer || *outer != b) {
                    r.is_oml = false;
                    r.oml_witness = {{a, b}};
                    break;
                }
            }
        }
    }

    r.is_boolean = r.is_mv;
    if (!r.is_mv) r.boolean_witness = std::nullopt;
    for (int a = 0; a < n && r.is_boolean; ++a) {
        if (!sharp[a]) {
            r.is_boolean = false;
            r.boolean_witness = a;
        }
    }
    return r;
}

bool is_valid_state(const FiniteEffectAlgebra& L, const EAState& s) {
    const int n = L.size();
    if (s.values.size() != static_cast<std::size_t>(n)) return false;
    for (double v : s.values) {
        if (v < -1e-12 || v > 1.0 + 1e-12) return false;
    }
    if (std::abs(s.values[static_cast<std::size_t>(L.one())] - 1.0) > 1e-12) return false;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (!L.defined(a, b)) continue;
            const double lhs = s.values[static_cast<std::size_t>(L.osum(a, b))];
            const double rhs = s.values[static_cast<std::size_t>(a)] +
                               s.values[static_cast<std::size_t>(b)];
            if (std::abs(lhs - rhs) > 1e-10) return false;
        }
    }
    return true;
}

bool states_ordering(const FiniteEffectAlgebra& L, const std::vector<EAState>& S) {
    const int n = L.size();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            bool all_leq = true;
            for (const auto& s : S) {
                if (s.values[static_cast<std::size_t>(a)] >
                    s.values[static_cast<std::size_t>(b)] + 1e-12) {
                    all_leq = false;
                    break;
                }
            }
            if (all_leq != L.leq(a, b)) return false;
        }
    }
    return true;
}

bool states_separating(const FiniteEffectAlgebra& L, const std::vector<EAState>& S) {
    const int n = L.size();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            bool distinguished = false;
            for (const auto& s : S) {
                if (std::abs(s.values[static_cast<std::size_t>(a)] -
                             s.values[static_cast<std::size_t>(b)]) > 1e-12) {
                    distinguished = true;
                    break;
                }
            }
            if (!distinguished) return false;
        }
    }
    return true;
}

} // namespace synaptic
