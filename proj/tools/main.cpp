// Command line front end: file-driven spectral analysis, smearing,
// decomposition and effect-algebra checking on top of the synaptic library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synaptic/io.hpp"
#include "synaptic/kernel.hpp"
#include "synaptic/matrix.hpp"
#include "synaptic/observable.hpp"

using namespace synaptic;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;      // input parsed but failed validation
constexpr int kExitRefusal = 2;      // mathematically well-posed refusal
constexpr int kExitIo = 3;           // unreadable or unparsable input

struct Options {
    std::string format = "text";
    std::uint64_t seed = 0;
    double tol = 0.0;       // 0 keeps defaults
    double tol_eig = 0.0;
};

bool structured(const Options& o) { return o.format == "structured"; }

void emit(const Options& o, const Json& j, const std::string& text) {
    if (structured(o)) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << text;
    }
}

int cmd_spectral(const Options& opt, const std::string& path) {
    const Hermitian a = io::load_matrix(path);
    const SpectralResolution r = spectral_resolution(a);
    const Hermitian back = element_from_resolution(r);
    const double residual = frobenius_distance(a, back);

    Json j;
    j["command"] = "spectral";
    j["dim"] = a.dim();
    j["breakpoints"] = r.breakpoints;
    j["lower"] = r.lower();
    j["upper"] = r.upper();
    Json steps = Json::array();
    for (const auto& p : r.steps) steps.push_back(io::to_json(p));
    j["steps"] = steps;
    j["reconstruction_residual"] = residual;

    std::ostringstream os;
    os << "spectral resolution of " << path << " (dim " << a.dim() << ")\n";
    os << "  breakpoints:";
    for (double b : r.breakpoints) os << ' ' << b;
    os << "\n  L = " << r.lower() << ", U = " << r.upper() << '\n';
    os << "  reconstruction residual = " << residual << '\n';
    emit(opt, j, os.str());
    return kExitOk;
}

int cmd_smear(const Options& opt, const std::string& obs_path, const std::string& ker_path,
              const std::string& out_path) {
    const Observable xi = io::load_observable(obs_path);
    const WeakMarkovKernel nu = io::load_kernel(ker_path);
    const Observable eta = smear(xi, nu);

    // report the defining state identity per spanning state
    const auto states = spanning_states(xi.dim());
    double worst = 0.0;
    for (const auto& m : states) {
        for (std::size_t y = 0; y < eta.size(); ++y) {
            double rhs = 0.0;
            for (std::size_t x = 0; x < xi.size(); ++x) {
                if (xi.is_null_atom(x)) continue;
                rhs += nu.rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) *
                       apply(m, xi.atom(x));
            }
            worst = std::max(worst, std::abs(apply(m, eta.atom(y)) - rhs));
        }
    }

    if (!out_path.empty()) io::save_json(out_path, io::to_json(eta));
    Json j;
    j["command"] = "smear";
    j["observable"] = io::to_json(eta);
    j["sharp"] = is_sharp(eta);
    j["state_identity_residual"] = worst;
    j["states_checked"] = states.size();

    std::ostringstream os;
    os << "smearing of " << obs_path << " by " << ker_path << '\n';
    os << "  outcomes: " << eta.size() << ", sharp: " << (is_sharp(eta) ? "yes" : "no") << '\n';
    os << "  state identity verified on " << states.size()
       << " spanning states, max residual = " << worst << " -> "
       << (worst <= 1e-9 ? "PASS" : "FAIL") << '\n';
    if (!out_path.empty()) os << "  wrote " << out_path << '\n';
    emit(opt, j, os.str());
    return kExitOk;
}

int cmd_decompose(const Options& opt, const std::string& obs_path,
                  const std::string& sharp_out, const std::string& kernel_out) {
    const Observable eta = io::load_observable(obs_path);
    const Decomposition dec = decompose_commuting(eta, opt.seed);
    const Observable back = smear(dec.sharp, dec.kernel);
    double residual = 0.0;
    for (std::size_t y = 0; y < eta.size(); ++y) {
        residual = std::max(residual, frobenius_distance(back.atom(y), eta.atom(y)));
    }

    if (!sharp_out.empty()) io::save_json(sharp_out, io::to_json(dec.sharp));
    if (!kernel_out.empty()) io::save_json(kernel_out, io::to_json(dec.kernel));

    Json j;
    j["command"] = "decompose";
    j["sharp"] = io::to_json(dec.sharp);
    j["kernel"] = io::to_json(dec.kernel);
    j["round_trip_residual"] = residual;

    std::ostringstream os;
    os << "decomposition of " << obs_path << '\n';
    os << "  sharp observable with " << dec.sharp.size() << " atoms\n";
    os << "  round-trip residual = " << residual << '\n';
    if (!sharp_out.empty()) os << "  wrote " << sharp_out << '\n';
    if (!kernel_out.empty()) os << "  wrote " << kernel_out << '\n';
    emit(opt, j, os.str());
    return kExitOk;
}

int cmd_funcalc(const Options& opt, const std::string& path, const std::string& fn,
                const std::vector<double>& coeffs, const std::string& out_path) {
    const Hermitian a = io::load_matrix(path);
    std::function<double(double)> f;
    if (fn == "exp") {
        f = [](double t) { return std::exp(t); };
    } else if (fn == "log") {
        f = [](double t) { return std::log(t); };
    } else if (fn == "sqrt") {
        f = [](double t) { return std::sqrt(t); };
    } else if (fn == "abs") {
        f = [](double t) { return std::abs(t); };
    } else if (fn == "square") {
        f = [](double t) { return t * t; };
    } else if (fn == "poly") {
        f = [coeffs](double t) {
            double acc = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
            return acc;
        };
    } else {
        std::cerr << "unknown function: " << fn << '\n';
        return kExitIo;
    }
    const Hermitian result = functional_calculus(a, f);
    if (!out_path.empty()) io::save_json(out_path, io::to_json(result));

    Json j;
    j["command"] = "funcalc";
    j["fn"] = fn;
    j["result"] = io::to_json(result);
    std::ostringstream os;
    os << fn << "(" << path << "): dim " << result.dim() << ", norm "
       << order_unit_norm(result) << '\n';
    if (!out_path.empty()) os << "  wrote " << out_path << '\n';
    emit(opt, j, os.str());
    return kExitOk;
}

int cmd_joint(const Options& opt, const std::vector<std::string>& paths,
              const std::string& gfun, const std::string& out_path) {
    std::vector<RealObservable> parts;
    for (const auto& p : paths) parts.push_back(observable_of_element(io::load_matrix(p)));
    const JointObservable joint = joint_spectral_measure(parts);

    Json j;
    j["command"] = "joint";
    j["points"] = joint.points;
    Json atoms = Json::array();
    for (const auto& a : joint.atoms) atoms.push_back(io::to_json(a));
    j["atoms"] = atoms;

    std::ostringstream os;
    os << "joint spectral measure of " << paths.size() << " elements: " << joint.points.size()
       << " atoms\n";
    for (std::size_t i = 0; i < joint.points.size(); ++i) {
        os << "  (";
        for (std::size_t k = 0; k < joint.points[i].size(); ++k) {
            if (k) os << ", ";
            os << joint.points[i][k];
        }
        os << ")\n";
    }

    if (!gfun.empty()) {
        std::function<double(const std::vector<double>&)> G;
        if (gfun == "sum") {
            G = [](const std::vector<double>& t) {
                double s = 0;
                for (double v : t) s += v;
                return s;
            };
        } else if (gfun == "product") {
            G = [](const std::vector<double>& t) {
                double s = 1;
                for (double v : t) s *= v;
                return s;
            };
        } else {
            std::cerr << "unknown G-function: " << gfun << '\n';
            return kExitIo;
        }
        const RealObservable g = g_function(joint, G);
        const Observable go = g.to_observable();
        j["g"] = gfun;
        j["g_observable"] = io::to_json(go);
        if (!out_path.empty()) io::save_json(out_path, io::to_json(go));
        os << "  G = " << gfun << " -> outcomes:";
        for (double v : g.values()) os << ' ' << v;
        os << '\n';
        if (!out_path.empty()) os << "  wrote " << out_path << '\n';
    }
    emit(opt, j, os.str());
    return kExitOk;
}

int cmd_ea_check(const Options& opt, const std::string& path) {
    const RawEffectTable raw = io::load_effect_table(path);
    const auto violations = FiniteEffectAlgebra::check(raw);

    Json j;
    j["command"] = "ea-check";
    j["valid"] = violations.empty();
    Json vlist = Json::array();
    for (const auto& v : violations) {
        Json e;
        e["axiom"] = v.axiom;
        e["witness"] = v.witness;
        e["detail"] = v.detail;
        vlist.push_back(e);
    }
    j["violations"] = vlist;

    std::ostringstream os;
    os << "effect algebra " << path << " (size " << raw.size << ")\n";
    if (!violations.empty()) {
        for (const auto& v : violations) {
            os << "  " << v.axiom << " FAIL: " << v.detail << " (witness";
            for (int w : v.witness) {
                if (w >= 0) os << ' ' << w;
            }
            os << ")\n";
        }
        emit(opt, j, os.str());
        return kExitInvalid;
    }
    os << "  EA1-EA4 PASS\n";

    const FiniteEffectAlgebra L = FiniteEffectAlgebra::validate(raw);
    const ClassifyReport rep = classify(L);
    Json c;
    c["is_lattice"] = rep.is_lattice;
    c["is_mv"] = rep.is_mv;
    c["is_oml"] = rep.is_oml;
    c["is_boolean"] = rep.is_boolean;
    c["is_orthocomplete"] = rep.is_orthocomplete;
    if (rep.mv_witness) c["mv_witness"] = *rep.mv_witness;
    if (rep.lattice_witness) c["lattice_witness"] = *rep.lattice_witness;
    if (rep.oml_witness) c["oml_witness"] = *rep.oml_witness;
    if (rep.boolean_witness) c["boolean_witness"] = *rep.boolean_witness;
    j["classification"] = c;

    os << "  lattice: " << (rep.is_lattice ? "yes" : "no")
       << ", MV: " << (rep.is_mv ? "yes" : "no") << ", OML(sharp): "
       << (rep.is_oml ? "yes" : "no") << ", Boolean: " << (rep.is_boolean ? "yes" : "no")
       << ", orthocomplete: yes\n";
    if (rep.mv_witness && rep.is_lattice) {
        os << "  incompatible pair: " << (*rep.mv_witness)[0] << ", " << (*rep.mv_witness)[1]
           << '\n';
    }
    emit(opt, j, os.str());
    return kExitOk;
}

int cmd_verify(const Options& opt, const std::vector<std::string>& matrices,
               const std::vector<std::string>& observables,
               const std::vector<std::string>& kernels,
               const std::vector<std::string>& tables) {
    Json j;
    j["command"] = "verify";
    Json items = Json::array();
    std::ostringstream os;
    bool all_ok = true;

    for (const auto& p : matrices) {
        const Hermitian a = io::load_matrix(p);
        const auto r = spectral_resolution(a);
        const double residual = frobenius_distance(element_from_resolution(r), a);
        const bool ok = residual < 1e-9;
        all_ok = all_ok && ok;
        items.push_back({{"file", p}, {"kind", "matrix"}, {"ok", ok}, {"residual", residual}});
        os << (ok ? "PASS" : "FAIL") << " matrix " << p << " (spectral residual " << residual
           << ")\n";
    }
    for (const auto& p : observables) {
        const Observable xi = io::load_observable(p);
        const bool commuting = has_commuting_range(xi);
        items.push_back({{"file", p},
                         {"kind", "observable"},
                         {"ok", true},
                         {"sharp", is_sharp(xi)},
                         {"commuting_range", commuting}});
        os << "PASS observable " << p << " (sharp " << (is_sharp(xi) ? "yes" : "no")
           << ", commuting range " << (commuting ? "yes" : "no") << ")\n";
    }
    for (const auto& p : kernels) {
        const WeakMarkovKernel nu = io::load_kernel(p);
        const auto issues = check_kernel(nu);
        const bool ok = issues.empty();
        all_ok = all_ok && ok;
        items.push_back({{"file", p}, {"kind", "kernel"}, {"ok", ok}});
        os << (ok ? "PASS" : "FAIL") << " kernel " << p << '\n';
    }
    for (const auto& p : tables) {
        const RawEffectTable t = io::load_effect_table(p);
        const bool ok = FiniteEffectAlgebra::check(t).empty();
        all_ok = all_ok && ok;
        items.push_back({{"file", p}, {"kind", "effect-algebra"}, {"ok", ok}});
        os << (ok ? "PASS" : "FAIL") << " effect algebra " << p << '\n';
    }
    j["items"] = items;
    j["ok"] = all_ok;
    emit(opt, j, os.str());
    return all_ok ? kExitOk : kExitInvalid;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sharp and fuzzy observables on finite-dimensional Hermitian algebras"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--seed", opt.seed, "seed for randomized diagonalization");
    app.add_option("--tol", opt.tol, "override the hermiticity/projection/commutation tolerance");
    app.add_option("--tol-eig", opt.tol_eig, "override the eigenvalue clustering tolerance");

    std::string matrix_path, obs_path, ker_path, out_path, sharp_out, kernel_out;
    std::string fn = "exp", gfun;
    std::vector<double> coeffs;
    std::vector<std::string> joint_paths, v_matrices, v_observables, v_kernels, v_tables;

    auto* spectral = app.add_subcommand("spectral", "spectral resolution of a matrix file");
    spectral->add_option("matrix", matrix_path)->required();

    auto* smearc = app.add_subcommand("smear", "smear an observable by a kernel");
    smearc->add_option("observable", obs_path)->required();
    smearc->add_option("kernel", ker_path)->required();
    smearc->add_option("-o,--out", out_path, "write the smeared observable here");

    auto* decompose = app.add_subcommand("decompose",
                                         "write a commuting-range observable as a smearing of a "
                                         "sharp one");
    decompose->add_option("observable", obs_path)->required();
    decompose->add_option("--sharp-out", sharp_out);
    decompose->add_option("--kernel-out", kernel_out);

    auto* funcalc = app.add_subcommand("funcalc", "apply a function to a matrix spectrally");
    funcalc->add_option("matrix", matrix_path)->required();
    funcalc->add_option("--fn", fn, "exp, log, sqrt, abs, square or poly");
    funcalc->add_option("--coeff", coeffs, "polynomial coefficients, lowest degree first");
    funcalc->add_option("-o,--out", out_path);

    auto* joint = app.add_subcommand("joint", "joint spectral measure of commuting matrices");
    joint->add_option("matrices", joint_paths)->required()->expected(-1);
    joint->add_option("--g", gfun, "apply a G-function: sum or product");
    joint->add_option("-o,--out", out_path);

    auto* ea = app.add_subcommand("ea-check", "verify and classify an effect algebra table");
    ea->add_option("table", obs_path)->required();

    auto* verify = app.add_subcommand("verify", "run validity checks over input files");
    verify->add_option("--matrix", v_matrices);
    verify->add_option("--observable", v_observables);
    verify->add_option("--kernel", v_kernels);
    verify->add_option("--ea", v_tables);

    CLI11_PARSE(app, argc, argv);

    if (opt.tol > 0) {
        tolerances().hermitian = opt.tol;
        tolerances().projection = opt.tol;
        tolerances().commutation = opt.tol;
    }
    if (opt.tol_eig > 0) tolerances().eigen_cluster = opt.tol_eig;

    try {
        if (spectral->parsed()) return cmd_spectral(opt, matrix_path);
        if (smearc->parsed()) return cmd_smear(opt, obs_path, ker_path, out_path);
        if (decompose->parsed()) return cmd_decompose(opt, obs_path, sharp_out, kernel_out);
        if (funcalc->parsed()) return cmd_funcalc(opt, matrix_path, fn, coeffs, out_path);
        if (joint->parsed()) return cmd_joint(opt, joint_paths, gfun, out_path);
        if (ea->parsed()) return cmd_ea_check(opt, obs_path);
        if (verify->parsed()) {
            return cmd_verify(opt, v_matrices, v_observables, v_kernels, v_tables);
        }
    } catch (const NonCommutingRange& e) {
        Json j;
        j["error"] = "non-commuting range";
        j["witness"] = {{"first", e.first}, {"second", e.second},
                        {"commutator_norm", e.commutator_norm}};
        if (structured(opt)) {
            std::cout << j.dump(2) << '\n';
        } else {
            std::cerr << "refused: " << e.what() << '\n';
        }
        return kExitRefusal;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitIo;
}
