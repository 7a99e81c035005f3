#include "synaptic/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace synaptic::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end()) fail(std::string("missing field \"") + name + "\"");
    return *it;
}

std::vector<std::vector<double>> real_grid(const Json& j, int n, const char* name) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(n)) {
        fail(std::string("field \"") + name + "\" must be an n x n array");
    }
    std::vector<std::vector<double>> out;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
            fail(std::string("field \"") + name + "\" must be an n x n array");
        }
        std::vector<double> r;
        for (const auto& v : row) {
            if (!v.is_number()) fail(std::string("non-numeric entry in \"") + name + "\"");
            r.push_back(v.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

Json to_json(const Hermitian& a) {
    const int n = a.dim();
    Json re = Json::array();
    Json im = Json::array();
    bool complex = false;
    for (int i = 0; i < n; ++i) {
        Json rrow = Json::array();
        Json irow = Json::array();
        for (int j = 0; j < n; ++j) {
            rrow.push_back(a.mat()(i, j).real());
            irow.push_back(a.mat()(i, j).imag());
            if (a.mat()(i, j).imag() != 0.0) complex = true;
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    Json out;
    out["dim"] = n;
    out["re"] = re;
    if (complex) out["im"] = im;
    return out;
}

Hermitian matrix_from_json(const Json& j) {
    const auto& d = field(j, "dim");
    if (!d.is_number_integer() || d.get<int>() < 1) fail("\"dim\" must be a positive integer");
    const int n = d.get<int>();
    const auto re = real_grid(field(j, "re"), n, "re");
    std::vector<std::vector<double>> im(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
    if (j.contains("im")) im = real_grid(j.at("im"), n, "im");
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            m(r, c) = Complex(re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                              im[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        }
    }
    try {
        return Hermitian(m);
    } catch (const NotHermitian& e) {
        fail(e.what());
    }
}

Json to_json(const Observable& xi) {
    Json out;
    out["outcomes"] = xi.labels();
    Json atoms = Json::array();
    for (std::size_t i = 0; i < xi.size(); ++i) atoms.push_back(to_json(xi.atom(i)));
    out["atoms"] = atoms;
    return out;
}

Observable observable_from_json(const Json& j) {
    const auto& outcomes = field(j, "outcomes");
    const auto& atoms = field(j, "atoms");
    if (!outcomes.is_array() || !atoms.is_array()) fail("\"outcomes\" and \"atoms\" must be arrays");
    std::vector<std::string> labels;
    for (const auto& o : outcomes) {
        labels.push_back(o.is_string() ? o.get<std::string>() : o.dump());
    }
    std::vector<Hermitian> effects;
    for (const auto& a : atoms) effects.push_back(matrix_from_json(a));
    return Observable(std::move(labels), std::move(effects));
}

Json to_json(const WeakMarkovKernel& nu) {
    Json out;
    out["source"] = nu.source;
    out["target"] = nu.target;
    Json rows = Json::array();
    for (Eigen::Index x = 0; x < nu.rows.rows(); ++x) {
        Json row = Json::array();
        for (Eigen::Index y = 0; y < nu.rows.cols(); ++y) row.push_back(nu.rows(x, y));
        rows.push_back(row);
    }
    out["rows"] = rows;
    Json null_labels = Json::array();
    for (std::size_t x : nu.null_ideal) null_labels.push_back(nu.source[x]);
    out["null"] = null_labels;
    return out;
}

WeakMarkovKernel kernel_from_json(const Json& j) {
    WeakMarkovKernel nu;
    for (const auto& s : field(j, "source")) nu.source.push_back(s.get<std::string>());
    for (const auto& t : field(j, "target")) nu.target.push_back(t.get<std::string>());
    const auto& rows = field(j, "rows");
    if (!rows.is_array() || rows.size() != nu.source.size()) {
        fail("\"rows\" must have one row per source outcome");
    }
    nu.rows.resize(static_cast<Eigen::Index>(nu.source.size()),
                   static_cast<Eigen::Index>(nu.target.size()));
    for (std::size_t x = 0; x < nu.source.size(); ++x) {
        const auto& row = rows[x];
        if (!row.is_array() || row.size() != nu.target.size()) {
            fail("\"rows\" must have one entry per target outcome");
        }
        for (std::size_t y = 0; y < nu.target.size(); ++y) {
            nu.rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
                row[y].get<double>();
        }
    }
    if (j.contains("null")) {
        for (const auto& lab : j.at("null")) {
            const std::string s = lab.get<std::string>();
            const auto it = std::find(nu.source.begin(), nu.source.end(), s);
            if (it == nu.source.end()) fail("null label \"" + s + "\" is not a source outcome");
            nu.null_ideal.insert(static_cast<std::size_t>(it - nu.source.begin()));
        }
    }
    return nu;
}

Json to_json(const RawEffectTable& t) {
    Json out;
    out["size"] = t.size;
    out["zero"] = t.zero;
    out["one"] = t.one;
    Json triples = Json::array();
    for (int a = 0; a < t.size; ++a) {
        for (int b = 0; b < t.size; ++b) {
            if (t.osum[a][b] >= 0) triples.push_back(Json::array({a, b, t.osum[a][b]}));
        }
    }
    out["osum"] = triples;
    return out;
}

RawEffectTable effect_table_from_json(const Json& j) {
    RawEffectTable t;
    t.size = field(j, "size").get<int>();
    t.zero = field(j, "zero").get<int>();
    t.one = field(j, "one").get<int>();
    if (t.size < 1) fail("\"size\" must be positive");
    t.osum.assign(static_cast<std::size_t>(t.size),
                  std::vector<int>(static_cast<std::size_t>(t.size), -1));
    for (const auto& triple : field(j, "osum")) {
        if (!triple.is_array() || triple.size() != 3) fail("osum entries must be [a,b,c] triples");
        const int a = triple[0].get<int>();
        const int b = triple[1].get<int>();
        const int c = triple[2].get<int>();
        if (a < 0 || a >= t.size || b < 0 || b >= t.size || c < 0 || c >= t.size) {
            fail("osum triple index out of range");
        }
        t.osum[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = c;
    }
    return t;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(path + ": " + e.what());
    }
}

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) fail("cannot write " + path);
    out << j.dump(2) << '\n';
}

Hermitian load_matrix(const std::string& path) { return matrix_from_json(load_json(path)); }

Observable load_observable(const std::string& path) {
    return observable_from_json(load_json(path));
}

WeakMarkovKernel load_kernel(const std::string& path) {
    return kernel_from_json(load_json(path));
}

RawEffectTable load_effect_table(const std::string& path) {
    return effect_table_from_json(load_json(path));
}

DensityState load_state(const std::string& path) {
    return DensityState(load_matrix(path));
}

RealObservable as_real(const Observable& xi) {
    std::vector<double> values;
    for (const auto& label : xi.labels()) {
        std::istringstream is(label);
        double v = 0.0;
        char left = 0;
        if (!(is >> v) || (is >> left)) fail("outcome label \"" + label + "\" is not numeric");
        values.push_back(v);
    }
    return RealObservable(values, xi.atoms());
}

} // namespace synaptic::io
