#pragma once

#include <string>

#include <json.hpp>

#include "synaptic/effect_algebra.hpp"
#include "synaptic/kernel.hpp"
#include "synaptic/observable.hpp"
#include "synaptic/states.hpp"

namespace synaptic::io {

using Json = nlohmann::ordered_json;

// Matrix files: {"dim": n, "re": [[..]], "im": [[..]]}; "im" omitted means a
// real symmetric matrix.
Json to_json(const Hermitian& a);
Hermitian matrix_from_json(const Json& j);

// Observable files: {"outcomes": [labels], "atoms": [matrix objects]}.
Json to_json(const Observable& xi);
Observable observable_from_json(const Json& j);

// Kernel files: {"source": [..], "target": [..], "rows": [[..]], "null": [..]}.
Json to_json(const WeakMarkovKernel& nu);
WeakMarkovKernel kernel_from_json(const Json& j);

// Effect algebra files: {"size": n, "zero": i, "one": j, "osum": [[a,b,c],..]}.
Json to_json(const RawEffectTable& t);
RawEffectTable effect_table_from_json(const Json& j);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

Hermitian load_matrix(const std::string& path);
Observable load_observable(const std::string& path);
WeakMarkovKernel load_kernel(const std::string& path);
RawEffectTable load_effect_table(const std::string& path);
DensityState load_state(const std::string& path);

/// Interprets an observable with numeric labels as a real observable.
RealObservable as_real(const Observable& xi);

} // namespace synaptic::io
