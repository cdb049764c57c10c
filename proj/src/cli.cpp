#include "cmconv/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmconv/convolutions.hpp"
#include "cmconv/error.hpp"
#include "cmconv/measures.hpp"
#include "cmconv/oracle.hpp"

namespace cmconv::cli {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::usage, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::usage, "'" + path + "': " + e.what());
    }
}

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw Error(Errc::usage, std::string("expected a number for '") + key + "'");
    }
    return j.at(key).get<double>();
}

Complex get_complex(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(Errc::usage, "complex numbers are written [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> get_complex_list(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw Error(Errc::usage, std::string("expected an array for '") + key + "'");
    }
    std::vector<Complex> out;
    for (const auto& v : j.at(key)) out.push_back(get_complex(v));
    return out;
}

std::vector<Atom> get_atoms(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw Error(Errc::usage, std::string("expected an array for '") + key + "'");
    }
    std::vector<Atom> atoms;
    for (const auto& a : j.at(key)) atoms.push_back({get_number(a, "angle"), get_number(a, "weight")});
    return atoms;
}

CircleMeasureSpec measure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        throw Error(Errc::usage, "measure needs a \"type\" of atoms, haar or moments");
    }
    const auto type = j.at("type").get<std::string>();
    CircleMeasureSpec spec;
    if (type == "atoms") {
        spec = AtomicMeasure{get_atoms(j, "atoms")};
    } else if (type == "haar") {
        spec = HaarMeasure{};
    } else if (type == "moments") {
        spec = RawMoments{get_complex_list(j, "values")};
    } else {
        throw Error(Errc::usage, "unknown measure type '" + type + "'");
    }
    validate(spec);
    return spec;
}

EtaCoefficients eta_of(const CircleMeasureSpec& spec, std::size_t order) {
    return eta_from_moments(moments_from_spec(spec, order));
}

// ---- output ----

std::string cplx(Complex c) { return "[" + format_number(c.real()) + ", " + format_number(c.imag()) + "]"; }

std::string cplx_list(const std::vector<Complex>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ", ";
        s += cplx(v[k]);
    }
    return s + "]";
}

std::vector<Complex> eta_list(const EtaCoefficients& e) {
    std::vector<Complex> v;
    for (std::size_t n = 1; n <= e.order(); ++n) v.push_back(e.a(n));
    return v;
}

// Ordered key/value pairs rendered as an indented JSON object.
class Object {
  public:
    Object& add(const std::string& key, const std::string& raw) {
        fields_.emplace_back(key, raw);
        return *this;
    }
    Object& str(const std::string& key, const std::string& value) { return add(key, "\"" + value + "\""); }
    Object& num(const std::string& key, double value) { return add(key, format_number(value)); }
    Object& integer(const std::string& key, long long value) { return add(key, std::to_string(value)); }

    std::string render(int indent = 0) const {
        const std::string pad(indent + 2, ' ');
        std::string s = "{\n";
        for (std::size_t k = 0; k < fields_.size(); ++k) {
            s += pad + "\"" + fields_[k].first + "\": " + fields_[k].second;
            s += k + 1 < fields_.size() ? ",\n" : "\n";
        }
        return s + std::string(indent, ' ') + "}";
    }

  private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

std::string measure_block(const EtaCoefficients& e, int indent) {
    return Object()
        .add("eta", cplx_list(eta_list(e)))
        .add("moments", cplx_list(moments_from_eta(e).values()))
        .render(indent);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::usage, "cannot write '" + path + "'");
    f << text;
}

Complex parse_c(const std::string& s) {
    std::stringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw Error(Errc::usage, "--c expects RE,IM");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw Error(Errc::usage, "--c expects RE,IM");
    }
    in >> std::ws;
    if (!in.eof()) throw Error(Errc::usage, "--c expects RE,IM");
    return {re, im};
}

void check_order(std::size_t order) {
    if (order < 1) throw Error(Errc::usage, "--order must be at least 1");
}

}  // namespace

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

CircleMeasureSpec read_measure(const std::string& path) { return measure_from_json(load_json(path)); }

PairDistribution read_pair(const std::string& path, std::size_t order) {
    const auto j = load_json(path);
    if (!j.is_object() || !j.contains("mu") || !j.contains("nu")) {
        throw Error(Errc::usage, "pair file needs \"mu\" and \"nu\" measures");
    }
    return {eta_of(measure_from_json(j.at("mu")), order), eta_of(measure_from_json(j.at("nu")), order)};
}

FieldSeries read_field(const std::string& path, std::size_t order) {
    const auto j = load_json(path);
    if (!j.is_object()) throw Error(Errc::usage, "field file must hold an object");
    if (j.contains("series")) {
        auto r = get_complex_list(j, "series");
        r.resize(order);
        return FieldSeries(std::move(r));
    }
    HerglotzField f;
    f.gamma = j.contains("gamma") ? get_number(j, "gamma") : 0.0;
    if (j.contains("tau")) f.tau = get_atoms(j, "tau");
    if (!std::isfinite(f.gamma)) throw Error(Errc::not_herglotz, "gamma must be finite");
    for (const auto& a : f.tau) {
        if (!std::isfinite(a.angle) || !std::isfinite(a.weight) || a.weight < 0.0) {
            throw Error(Errc::not_herglotz, "tau weights must be finite and nonnegative");
        }
    }
    return field_series(f, order);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiplicative convolutions and semigroups of circle measures", "cmconv"};
    app.require_subcommand(1);

    std::string kind, lhs, rhs, out_path, measure_path, csv_path, target_path, b1_path, b2_path, traj_path, c_text;
    std::size_t order = default_order;
    double t = 0.0, radius = 0.9;
    int points = 512;
    std::optional<int> steps;

    auto* convolve = app.add_subcommand("convolve", "Convolve two measures or pairs");
    convolve->add_option("--kind", kind, "monotone|boolean|orthogonal|cmonotone|cfree|monotone0|boolean0")->required();
    convolve->add_option("--lhs", lhs)->required();
    convolve->add_option("--rhs", rhs)->required();
    convolve->add_option("--order", order);
    convolve->add_option("--out", out_path);

    auto* evolve = app.add_subcommand("evolve", "Evolve the semigroup of two vector fields");
    evolve->add_option("--b1", b1_path)->required();
    evolve->add_option("--b2", b2_path)->required();
    evolve->add_option("--t", t)->required();
    evolve->add_option("--order", order);
    evolve->add_option("--steps", steps, "RK4 steps (default 1000 per unit time)");
    evolve->add_option("--out", out_path);
    evolve->add_option("--trajectory", traj_path, "CSV of all eta-coefficients");

    auto* embed = app.add_subcommand("embed", "Recover vector fields from a time-one pair");
    embed->add_option("--target", target_path)->required();
    embed->add_option("--order", order);
    embed->add_option("--steps", steps);
    embed->add_option("--out", out_path);

    auto* check_id = app.add_subcommand("check-id", "Boolean infinite divisibility test");
    check_id->add_option("--measure", measure_path)->required();
    check_id->add_option("--order", order);
    check_id->add_option("--radius", radius);
    check_id->add_option("--points", points);
    check_id->add_option("--out", out_path);

    auto* density = app.add_subcommand("density", "Poisson-smoothed density samples");
    density->add_option("--measure", measure_path)->required();
    density->add_option("--radius", radius);
    density->add_option("--points", points);
    density->add_option("--order", order);
    density->add_option("--csv", csv_path);

    auto* oracle = app.add_subcommand("oracle", "Moments from the independence oracle");
    oracle->add_option("--kind", kind)->required();
    oracle->add_option("--lhs", lhs)->required();
    oracle->add_option("--rhs", rhs)->required();
    oracle->add_option("--order", order);
    oracle->add_option("--out", out_path);

    auto* scale = app.add_subcommand("scale", "T or S scaling of a measure");
    scale->add_option("--kind", kind, "T|S")->required();
    scale->add_option("--c", c_text, "RE,IM")->required();
    scale->add_option("--measure", measure_path)->required();
    scale->add_option("--order", order);
    scale->add_option("--out", out_path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "cmconv: " << e.what() << "\n";
        return 2;
    }

    try {
        check_order(order);
        if (convolve->parsed()) {
            const auto k = parse_convolution_kind(kind);
            Object o;
            o.str("kind", std::string(to_string(k))).integer("order", static_cast<long long>(order));
            if (is_pair_kind(k)) {
                const auto p = convolve_pair(k, read_pair(lhs, order), read_pair(rhs, order));
                o.add("mu", measure_block(p.mu, 2)).add("nu", measure_block(p.nu, 2));
            } else {
                const auto e = convolve_single(k, eta_of(read_measure(lhs), order), eta_of(read_measure(rhs), order));
                o.add("eta", cplx_list(eta_list(e))).add("moments", cplx_list(moments_from_eta(e).values()));
            }
            emit(o.render() + "\n", out_path, out);
        } else if (evolve->parsed()) {
            const int n_steps = steps ? *steps : std::max(1, static_cast<int>(std::ceil(1000.0 * t)));
            const auto ev = evolve_coefficients(read_field(b1_path, order), read_field(b2_path, order), t, n_steps,
                                                order);
            const auto last = ev.final_slice();
            Object o;
            o.num("t", t)
                .integer("order", static_cast<long long>(order))
                .integer("steps", n_steps)
                .add("mu", measure_block(last.mu, 2))
                .add("nu", measure_block(last.nu, 2));
            emit(o.render() + "\n", out_path, out);
            if (!traj_path.empty()) {
                std::string csv = "t,component,n,re,im\n";
                for (std::size_t j = 0; j < ev.times.size(); ++j) {
                    for (int c = 0; c < 2; ++c) {
                        const auto& e = c == 0 ? ev.mu[j] : ev.nu[j];
                        for (std::size_t n = 1; n <= order; ++n) {
                            csv += format_number(ev.times[j]) + (c == 0 ? ",mu," : ",nu,") + std::to_string(n) + "," +
                                   format_number(e.a(n).real()) + "," + format_number(e.a(n).imag()) + "\n";
                        }
                    }
                }
                emit(csv, traj_path, out);
            }
        } else if (embed->parsed()) {
            const auto fields = fields_from_time_one(read_pair(target_path, order), order, steps.value_or(1000));
            Object o;
            o.integer("order", static_cast<long long>(order))
                .add("b1", Object().add("series", cplx_list(fields.first.coeffs())).render(2))
                .add("b2", Object().add("series", cplx_list(fields.second.coeffs())).render(2));
            emit(o.render() + "\n", out_path, out);
        } else if (check_id->parsed()) {
            const auto e = eta_of(read_measure(measure_path), order);
            const bool verdict = check_boolean_id(e, radius, points);
            Object o;
            o.add("boolean_id", verdict ? "true" : "false").add("a1", cplx(e.a(1))).num("radius", radius);
            emit(o.render() + "\n", out_path, out);
            return verdict ? 0 : 1;
        } else if (density->parsed()) {
            const auto d = poisson_density(moments_from_spec(read_measure(measure_path), order), radius, points);
            std::string csv = "theta,density\n";
            for (std::size_t j = 0; j < d.angles.size(); ++j) {
                csv += format_number(d.angles[j]) + "," + format_number(d.values[j]) + "\n";
            }
            emit(csv, csv_path, out);
        } else if (oracle->parsed()) {
            const auto k = parse_convolution_kind(kind);
            FunctionalPair f1, f2;
            if (is_pair_kind(k)) {
                const auto p1 = read_pair(lhs, order), p2 = read_pair(rhs, order);
                f1 = {moments_from_eta(p1.mu), moments_from_eta(p1.nu)};
                f2 = {moments_from_eta(p2.mu), moments_from_eta(p2.nu)};
            } else {
                const auto m1 = moments_from_spec(read_measure(lhs), order);
                const auto m2 = moments_from_spec(read_measure(rhs), order);
                f1 = {m1, m1};
                f2 = {m2, m2};
            }
            const auto r = oracle_product_moments(k, f1, f2, order);
            Object o;
            o.str("kind", std::string(to_string(k)))
                .integer("order", static_cast<long long>(order))
                .add("left", cplx_list(r.left.values()))
                .add("right", cplx_list(r.right.values()));
            emit(o.render() + "\n", out_path, out);
        } else if (scale->parsed()) {
            if (kind != "T" && kind != "S") throw Error(Errc::usage, "--kind must be T or S");
            const Complex c = parse_c(c_text);
            const auto m = eta_of(read_measure(measure_path), order);
            const auto e = kind == "T" ? scale_T(c, m) : scale_S(c, m);
            Object o;
            o.str("kind", kind)
                .add("c", cplx(c))
                .integer("order", static_cast<long long>(order))
                .add("eta", cplx_list(eta_list(e)))
                .add("moments", cplx_list(moments_from_eta(e).values()));
            emit(o.render() + "\n", out_path, out);
        }
    } catch (const Error& e) {
        err << "cmconv: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return is_validation_error(e.code()) ? 2 : 3;
    } catch (const std::exception& e) {
        err << "cmconv: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace cmconv::cli
