// Copyright 2026 The qrange Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line surface. One subcommand per invocation; JSON on stdout for
// the analysis commands, CSV for sample and plot-data. Exit codes: 0 on
// success, 1 on a domain error (invalid measurement, unreadable input, or --
// with --strict -- a distribution outside the range / a positive witness
// gap), 2 on a usage error.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qrange/catalog.hpp"
#include "qrange/io.hpp"
#include "qrange/oracle.hpp"
#include "qrange/range.hpp"
#include "qrange/witness.hpp"

namespace qrange::cli {

namespace detail {

using io::json;

inline json number_array(std::span<const double> v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

inline json row_array(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(number_array(m.row(i)));
    return rows;
}

inline json verdict_json(const Vec& q, const Verdict& v) {
    json j;
    j["q"] = number_array(q);
    j["status"] = std::string(to_string(v.status));
    j["equality_residual"] = v.equality_residual;
    j["quad_form"] = v.quad_form;
    if (v.witness) {
        j["witness"] = number_array(*v.witness);
        j["witness_gap"] = *v.witness_gap;
    }
    return j;
}

inline json geometry_json(const EllipsoidGeometry& g) {
    json j;
    j["center"] = number_array(g.center);
    j["degeneracy"] = std::string(to_string(g.degeneracy));
    json axes = json::array();
    for (const SemiAxis& a : g.semi_axes) {
        json aj;
        aj["length"] = a.length;
        aj["direction"] = number_array(a.direction);
        axes.push_back(std::move(aj));
    }
    j["semi_axes"] = std::move(axes);
    json cons = json::array();
    for (const AffineConstraint& c : g.affine_constraints) {
        json cj;
        cj["normal"] = number_array(c.normal);
        cj["offset"] = c.offset;
        cons.push_back(std::move(cj));
    }
    j["affine_constraints"] = std::move(cons);
    return j;
}

inline void emit(const json& j, bool pretty, std::ostream& out) {
    out << io::dump_json(j, pretty) << '\n';
}

inline bool is_outside(const Verdict& v) {
    return to_containment(v.status) == Containment::Outside;
}

struct Options {
    std::string povm_path;
    std::string table_path;
    std::string witness_path;
    std::string emit_path;
    std::string kind_name;
    std::string mode_name;
    std::string projection = "axes";
    std::vector<double> q;
    std::vector<std::size_t> axes;  // empty means the first min(3, n) coordinates
    double lambda = 1.0;
    double tol = 1e-9;
    std::size_t count = 0;
    std::uint64_t seed = 1;
    std::size_t ellipse_points = 360;
    std::size_t sphere_u = 64;
    std::size_t sphere_v = 32;
    bool lambda_given = false;
    bool pretty = false;
    bool strict = false;
};

inline Povm load_measurement(const Options& o) {
    Povm p = io::load_povm_file(o.povm_path);
    return o.lambda_given ? depolarize(p, o.lambda) : p;
}

//------------------------------------------------------------------------
// subcommand handlers
//------------------------------------------------------------------------

inline int cmd_validate(const Options& o, std::ostream& out) {
    io::PovmDocument doc = io::parse_povm_document(io::read_json_file(o.povm_path));
    json j;
    j["label"] = doc.label;
    j["outcomes"] = doc.effects.size();

    double dt = -1.0;
    Vec3 ds{0.0, 0.0, 0.0};
    json effects = json::array();
    for (const Effect& e : doc.effects) {
        dt += e.t;
        ds = add3(ds, e.s);
        json ej;
        ej["t"] = e.t;
        ej["s"] = number_array(e.s);
        ej["positivity_margin"] = positivity_margin(e);
        ej["identity_margin"] = identity_margin(e);
        effects.push_back(std::move(ej));
    }

    bool valid = true;
    std::string problem;
    try {
        validate_povm(doc.effects, doc.label);
    } catch (const Error& e) {
        valid = false;
        problem = e.what();
    }
    j["valid"] = valid;
    if (!valid) j["problem"] = problem;
    j["completeness_residual"] = number_array(std::array{dt, ds[0], ds[1], ds[2]});
    j["effects"] = std::move(effects);
    emit(j, o.pretty, out);
    return valid ? 0 : 1;
}

inline int cmd_analyze(const Options& o, std::ostream& out) {
    Povm p = load_measurement(o);
    RangeModel m = build_range_model(p);
    json j;
    j["label"] = p.label();
    j["outcomes"] = p.size();
    if (o.lambda_given) j["lambda"] = o.lambda;
    j["t"] = number_array(m.t);
    j["Q"] = row_array(m.Q.dense());
    j["rank"] = m.rank_Q;
    j["eigenvalues"] = number_array(m.eig.eigenvalues);
    j["geometry"] = geometry_json(geometry(m));
    emit(j, o.pretty, out);
    return 0;
}

inline int cmd_test(const Options& o, bool q_given, std::ostream& out) {
    Povm p = io::load_povm_file(o.povm_path);
    RangeModel m = build_range_model(p);

    std::vector<Vec> queries;
    if (q_given) {
        queries.push_back(o.q);
    } else {
        CorrelationTable table = make_correlation_table(io::load_rows_file(o.table_path));
        for (std::size_t x = 0; x < table.entries.rows(); ++x) {
            auto row = table.entries.row(x);
            queries.emplace_back(row.begin(), row.end());
        }
    }

    json j;
    j["label"] = p.label();
    j["outcomes"] = p.size();
    j["tol"] = o.tol;
    json results = json::array();
    bool any_outside = false;
    for (const Vec& q : queries) {
        Verdict v = membership(m, q, o.tol);
        any_outside = any_outside || is_outside(v);
        results.push_back(verdict_json(q, v));
    }
    j["results"] = std::move(results);
    emit(j, o.pretty, out);
    return (o.strict && any_outside) ? 1 : 0;
}

inline int cmd_witness(const Options& o, bool table_given, std::ostream& out) {
    Povm p = io::load_povm_file(o.povm_path);
    WitnessMatrix w = make_witness_matrix(io::load_rows_file(o.witness_path));
    const double threshold = witness_threshold(p, w);

    json j;
    j["label"] = p.label();
    j["inputs"] = w.entries.rows();
    j["outcomes"] = p.size();
    j["threshold"] = threshold;
    json rows = json::array();
    for (std::size_t x = 0; x < w.entries.rows(); ++x)
        rows.push_back(row_threshold(p, w.entries.row(x)));
    j["row_thresholds"] = std::move(rows);

    bool incompatible = false;
    if (table_given) {
        CorrelationTable table = make_correlation_table(io::load_rows_file(o.table_path));
        const double gap = compatibility_gap(p, table, w);
        incompatible = gap > 0.0;
        j["value"] = threshold + gap;
        j["gap"] = gap;
        j["incompatible"] = incompatible;
    }
    emit(j, o.pretty, out);
    return (o.strict && incompatible) ? 1 : 0;
}

inline int cmd_catalog(const Options& o, bool q_given, std::ostream& out) {
    const CatalogKind kind = *catalog_from_name(o.kind_name);
    NoisyCatalogPovm nc = make_noisy_catalog(kind, o.lambda_given ? o.lambda : 1.0);
    json povm_json = io::povm_to_json(nc.povm);
    if (!o.emit_path.empty())
        io::write_text_file(o.emit_path, io::dump_json(povm_json, o.pretty) + "\n");

    if (!q_given) {
        emit(povm_json, o.pretty, out);
        return 0;
    }

    RangeModel m = build_range_model(nc.povm);
    Verdict v = membership(m, o.q, o.tol);
    Containment closed = closed_form_membership(kind, nc.lambda, o.q, o.tol);
    json j;
    j["kind"] = o.kind_name;
    j["lambda"] = nc.lambda;
    j["outcomes"] = nc.povm.size();
    j["closed_form"] = std::string(to_string(closed));
    j["theorem"] = verdict_json(o.q, v);
    j["agree"] = closed == to_containment(v.status);
    emit(j, o.pretty, out);
    return (o.strict && is_outside(v)) ? 1 : 0;
}

inline int cmd_sample(const Options& o, std::ostream& out) {
    Povm p = io::load_povm_file(o.povm_path);
    const SampleMode mode = o.mode_name == "pure" ? SampleMode::PureFibonacci
                                                  : SampleMode::MixedUniform;
    std::vector<std::string> header;
    header.reserve(p.size());
    for (std::size_t y = 0; y < p.size(); ++y) header.push_back("q" + std::to_string(y));
    out << io::csv_line(header);
    for (const Vec& q : sample_distributions(p, o.count, mode, o.seed))
        out << io::csv_numeric_line(q);
    return 0;
}

inline int cmd_plot_data(const Options& o, std::ostream& out) {
    Povm p = load_measurement(o);
    RangeModel m = build_range_model(p);
    EllipsoidGeometry g = geometry(m);
    const std::size_t n = p.size();

    const bool simplex = o.projection == "simplex";
    if (simplex && n != 3)
        throw Error("simplex projection requires exactly 3 outcomes");
    std::vector<std::size_t> axes = o.axes;
    if (!simplex) {
        if (axes.empty())
            for (std::size_t a = 0; a < std::min<std::size_t>(3, n); ++a)
                axes.push_back(a);
        for (std::size_t a : axes)
            if (a >= n) throw Error("axes projection: coordinate index out of range");
    }

    // Ternary coordinates place the outcomes at the corners of an
    // equilateral triangle with unit side.
    auto project = [&](const Vec& q) -> std::vector<double> {
        if (simplex) return {q[1] + 0.5 * q[2], std::sqrt(3.0) / 2.0 * q[2]};
        std::vector<double> coords;
        coords.reserve(axes.size());
        for (std::size_t a : axes) coords.push_back(q[a]);
        return coords;
    };

    std::vector<std::string> header{"kind"};
    if (simplex) {
        header.push_back("x");
        header.push_back("y");
    } else {
        for (std::size_t a : axes) header.push_back("q" + std::to_string(a));
    }
    out << io::csv_line(header);
    out << io::csv_numeric_line(project(g.center), "center");

    auto boundary_point = [&](std::span<const double> coords) {
        Vec q = g.center;
        for (std::size_t k = 0; k < coords.size(); ++k)
            for (std::size_t i = 0; i < n; ++i)
                q[i] += coords[k] * g.semi_axes[k].length * g.semi_axes[k].direction[i];
        out << io::csv_numeric_line(project(q), "boundary");
    };

    const double two_pi = 2.0 * 3.14159265358979323846;
    switch (m.rank_Q) {
        case 0:
            break;  // the range is the single point t
        case 1:
            boundary_point(std::array{1.0});
            boundary_point(std::array{-1.0});
            break;
        case 2:
            for (std::size_t k = 0; k < o.ellipse_points; ++k) {
                const double th = two_pi * static_cast<double>(k) /
                                  static_cast<double>(o.ellipse_points);
                boundary_point(std::array{std::cos(th), std::sin(th)});
            }
            break;
        default:
            for (std::size_t v = 0; v < o.sphere_v; ++v) {
                const double th = 0.5 * two_pi * static_cast<double>(v) /
                                  static_cast<double>(o.sphere_v - 1);
                for (std::size_t u = 0; u < o.sphere_u; ++u) {
                    const double ph = two_pi * static_cast<double>(u) /
                                      static_cast<double>(o.sphere_u);
                    boundary_point(std::array{std::sin(th) * std::cos(ph),
                                              std::sin(th) * std::sin(ph),
                                              std::cos(th)});
                }
            }
            break;
    }
    return 0;
}

}  // namespace detail

// Parses and dispatches one command line (program name excluded). All output
// goes to the supplied streams, making the surface testable in-process.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"range analysis for qubit measurements"};
    app.require_subcommand(1);

    detail::Options o;

    CLI::App* validate = app.add_subcommand(
        "validate", "check a measurement file and report residuals");
    validate->add_option("--povm", o.povm_path, "measurement JSON file")->required();
    validate->add_flag("--pretty", o.pretty, "indent JSON output");

    CLI::App* analyze = app.add_subcommand(
        "analyze", "report t, Q, rank, eigenvalues, and range geometry");
    analyze->add_option("--povm", o.povm_path, "measurement JSON file")->required();
    CLI::Option* analyze_lambda =
        analyze->add_option("--lambda", o.lambda, "depolarizing strength in [0, 1]");
    analyze->add_flag("--pretty", o.pretty, "indent JSON output");

    CLI::App* test = app.add_subcommand(
        "test", "membership verdicts for distributions, with witnesses when outside");
    test->add_option("--povm", o.povm_path, "measurement JSON file")->required();
    CLI::Option* test_q =
        test->add_option("--q", o.q, "distribution, comma-separated")->delimiter(',');
    CLI::Option* test_table =
        test->add_option("--table", o.table_path, "correlation table JSON file");
    test->add_option("--tol", o.tol, "boundary tolerance");
    test->add_flag("--strict", o.strict, "exit 1 when any distribution is outside");
    test->add_flag("--pretty", o.pretty, "indent JSON output");

    CLI::App* witness = app.add_subcommand(
        "witness", "evaluate a witness threshold and, with a table, the gap");
    witness->add_option("--povm", o.povm_path, "measurement JSON file")->required();
    witness->add_option("--w", o.witness_path, "witness matrix JSON file")->required();
    CLI::Option* witness_table =
        witness->add_option("--table", o.table_path, "correlation table JSON file");
    witness->add_flag("--strict", o.strict, "exit 1 when the gap is positive");
    witness->add_flag("--pretty", o.pretty, "indent JSON output");

    CLI::App* catalog = app.add_subcommand(
        "catalog", "emit a built-in measurement; with --q, test a distribution");
    catalog->add_option("--kind", o.kind_name, "measurement family")
        ->required()
        ->check(CLI::IsMember(
            {"trine", "tetrahedron", "square-mub", "octahedron-mub"}));
    CLI::Option* catalog_lambda =
        catalog->add_option("--lambda", o.lambda, "depolarizing strength in [0, 1]");
    catalog->add_option("--emit", o.emit_path, "also write the measurement JSON here");
    CLI::Option* catalog_q =
        catalog->add_option("--q", o.q, "distribution, comma-separated")->delimiter(',');
    catalog->add_option("--tol", o.tol, "boundary tolerance");
    catalog->add_flag("--strict", o.strict, "exit 1 when the distribution is outside");
    catalog->add_flag("--pretty", o.pretty, "indent JSON output");

    CLI::App* sample = app.add_subcommand(
        "sample", "CSV of distributions induced by sampled states");
    sample->add_option("--povm", o.povm_path, "measurement JSON file")->required();
    sample->add_option("--count", o.count, "number of samples")->required();
    sample->add_option("--mode", o.mode_name, "state family")
        ->required()
        ->check(CLI::IsMember({"pure", "mixed"}));
    sample->add_option("--seed", o.seed, "random seed (mixed mode)");

    CLI::App* plot_data = app.add_subcommand(
        "plot-data", "CSV point cloud of the range boundary plus center");
    plot_data->add_option("--povm", o.povm_path, "measurement JSON file")->required();
    CLI::Option* plot_lambda =
        plot_data->add_option("--lambda", o.lambda, "depolarizing strength in [0, 1]");
    plot_data->add_option("--projection", o.projection, "coordinate projection")
        ->check(CLI::IsMember({"simplex", "axes"}));
    plot_data->add_option("--axes", o.axes, "coordinate indices for axes projection")
        ->delimiter(',')
        ->expected(2, 3);
    plot_data->add_option("--ellipse-points", o.ellipse_points,
                          "boundary resolution when the range is an ellipse")
        ->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
    plot_data->add_option("--sphere-u", o.sphere_u, "longitude resolution")
        ->check(CLI::Range(std::size_t{3}, std::size_t{4096}));
    plot_data->add_option("--sphere-v", o.sphere_v, "latitude resolution")
        ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    o.lambda_given = analyze_lambda->count() > 0 || catalog_lambda->count() > 0 ||
                     plot_lambda->count() > 0;

    try {
        if (validate->parsed()) return detail::cmd_validate(o, out);
        if (analyze->parsed()) return detail::cmd_analyze(o, out);
        if (test->parsed()) {
            const bool q_given = test_q->count() > 0;
            const bool table_given = test_table->count() > 0;
            if (q_given == table_given) {
                err << "usage error: test requires exactly one of --q or --table\n";
                return 2;
            }
            return detail::cmd_test(o, q_given, out);
        }
        if (witness->parsed())
            return detail::cmd_witness(o, witness_table->count() > 0, out);
        if (catalog->parsed()) return detail::cmd_catalog(o, catalog_q->count() > 0, out);
        if (sample->parsed()) return detail::cmd_sample(o, out);
        if (plot_data->parsed()) return detail::cmd_plot_data(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace qrange::cli
