#include "billiards/cli.hpp"

#include "billiards/leray.hpp"
#include "billiards/oracle.hpp"
#include "billiards/report.hpp"
#include "billiards/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace billiards::cli {

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(flag + ": '" + item + "' is not a number");
        }
        if (used != item.size() || !std::isfinite(v)) {
            throw std::invalid_argument(flag + ": '" + item + "' is not a finite number");
        }
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument(flag + ": empty coordinate list");
    return values;
}

geometry::Vector to_vector(const std::vector<double>& v) {
    return Eigen::Map<const geometry::Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

geometry::SurfaceSpec surface_of(const RunConfig& c) {
    if (c.surface == "sphere") return geometry::SurfaceSpec::unit_sphere(c.m.value_or(2));
    return geometry::SurfaceSpec::ellipsoid(c.axes);
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
    if (c.out.empty()) {
        out << content;
    } else {
        report::write_atomically(c.out, content);
    }
}

int run_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const geometry::SurfaceSpec surface = surface_of(c);
    // Endpoints given with a few digits are pulled onto X before solving.
    const geometry::SurfacePoint A = geometry::retract(surface, to_vector(c.A));
    const geometry::SurfacePoint B = geometry::retract(surface, to_vector(c.B));
    if ((A.coords - B.coords).cwiseAbs().maxCoeff() <= configspace::kDistinctTol) {
        throw std::invalid_argument("--A and --B coincide on the surface");
    }

    solver::SolveOptions opts;
    opts.starts = c.starts;
    opts.seed = c.seed;
    opts.newton_tol = c.tol;
    opts.max_iters = c.max_iters;
    opts.dedup_tol = c.dedup_tol;
    opts.degenerate_eig_tol = c.degenerate_tol;
    opts.hessian = c.hessian == "fd" ? configspace::HessianMode::FiniteDifference
                                     : configspace::HessianMode::Analytic;
    opts.threads = c.threads;

    if (c.verbosity > 0) err << "solving n=" << c.n << " with " << c.starts << " starts\n";
    const solver::SolveResult result = solver::find_critical_points(surface, A, B, c.n, opts);
    const solver::CountVerdict verdict = solver::verify_count(result, surface.m(), c.n);
    const report::json j = report::solve_report(surface, A, B, c.n, result, verdict);
    emit(c, c.format == Format::Json ? j.dump(2) + "\n" : report::solve_text(j), out);
    return verdict.pass ? kExitOk : kExitVerdictFailed;
}

int run_oracle(const RunConfig& c, std::ostream& out) {
    const int m = c.m.value_or(2);
    geometry::Vector A;
    geometry::Vector B;
    if (c.phi) {
        std::tie(A, B) = oracle::endpoints_at_angle(m, *c.phi);
    } else {
        A = to_vector(c.A);
        B = to_vector(c.B);
    }
    const auto trajectories = oracle::sphere_trajectories(A, B, c.n);
    const report::json j = report::oracle_report(A, B, c.n, trajectories);
    emit(c, j.dump(2) + "\n", out);
    return kExitOk;
}

int run_cohomology(const RunConfig& c, std::ostream& out, bool full) {
    const dga::Field field = dga::Field::parse(c.field);
    const int m = c.m.value_or(0);
    const leray::CohomologyReport r =
        full ? leray::verify_theorem4(m, c.n, field) : leray::cohomology_report(m, c.n, field, c.products);
    emit(c, c.format == Format::Json ? report::to_json(r).dump(2) + "\n" : report::cohomology_text(r), out);
    bool ok = r.verdicts.poincare_ok;
    if (full) ok = r.verdicts.all();
    if (!full && c.products) ok = ok && r.verdicts.products_ok;
    return ok ? kExitOk : kExitVerdictFailed;
}

}  // namespace

void RunConfig::validate() const {
    if (n < 1) throw std::invalid_argument("--n must be at least 1");
    if (verbosity < 0) throw std::invalid_argument("verbosity must be non-negative");
    switch (command) {
        case Command::Solve: {
            if (surface != "sphere" && surface != "ellipsoid") {
                throw std::invalid_argument("--surface must be 'sphere' or 'ellipsoid'");
            }
            int dim = 0;
            if (surface == "sphere") {
                if (!axes.empty()) throw std::invalid_argument("--axes only applies to --surface ellipsoid");
                if (m.value_or(2) < 1) throw std::invalid_argument("--m must be at least 1");
                dim = m.value_or(2) + 1;
            } else {
                if (axes.size() < 2) throw std::invalid_argument("--surface ellipsoid needs --axes with at least two entries");
                for (double a : axes) {
                    if (!(a > 0.0)) throw std::invalid_argument("--axes entries must be positive");
                }
                if (m && *m + 1 != static_cast<int>(axes.size())) {
                    throw std::invalid_argument("--m disagrees with the number of --axes");
                }
                dim = static_cast<int>(axes.size());
            }
            if (static_cast<int>(A.size()) != dim || static_cast<int>(B.size()) != dim) {
                throw std::invalid_argument("--A and --B need " + std::to_string(dim) + " coordinates");
            }
            if (hessian != "analytic" && hessian != "fd") {
                throw std::invalid_argument("--hessian must be 'analytic' or 'fd'");
            }
            if (threads < 0) throw std::invalid_argument("--threads must be non-negative");
            solver::SolveOptions opts;
            opts.starts = starts;
            opts.newton_tol = tol;
            opts.max_iters = max_iters;
            opts.dedup_tol = dedup_tol;
            opts.degenerate_eig_tol = degenerate_tol;
            opts.validate();
            break;
        }
        case Command::Oracle: {
            if (m.value_or(2) < 1) throw std::invalid_argument("--m must be at least 1");
            const int dim = m.value_or(2) + 1;
            if (phi) {
                if (!A.empty() || !B.empty()) throw std::invalid_argument("give either --phi or --A/--B, not both");
                if (!(*phi > 0.0 && *phi < M_PI)) throw std::invalid_argument("--phi must lie in (0, pi)");
            } else if (static_cast<int>(A.size()) != dim || static_cast<int>(B.size()) != dim) {
                throw std::invalid_argument("oracle needs --phi, or --A and --B with " + std::to_string(dim) +
                                            " coordinates");
            }
            break;
        }
        case Command::Cohomology:
        case Command::Verify:
            if (!m) throw std::invalid_argument("--m is required");
            if (*m < 2) throw std::invalid_argument("--m must be at least 2");
            dga::AlgebraParams{*m, n, dga::Field::parse(field), dga::AlgebraKind::SphereTerm}.validate();
            break;
    }
}

std::optional<RunConfig> parse(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                               int& exit_code) {
    RunConfig c;
    CLI::App app{"Billiard trajectories in convex bodies and the cohomology of their configuration spaces",
                 "billiards"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", c.out, "Write the report to this file (atomically) instead of stdout");
    app.add_flag("-v,--verbose", c.verbosity, "Progress messages on stderr");

    std::string A_text, B_text, axes_text;
    int m_value = 0;

    auto* solve = app.add_subcommand("solve", "Find billiard trajectories from A to B with n reflections");
    solve->add_option("--surface", c.surface, "sphere or ellipsoid");
    solve->add_option("--m", m_value, "Surface dimension (sphere)");
    solve->add_option("--axes", axes_text, "Ellipsoid semi-axes, comma separated");
    solve->add_option("--A", A_text, "Start point, comma separated")->required();
    solve->add_option("--B", B_text, "End point, comma separated")->required();
    solve->add_option("--n", c.n, "Number of reflections")->required();
    solve->add_option("--starts", c.starts, "Multistart count");
    solve->add_option("--seed", c.seed, "RNG seed");
    solve->add_option("--tol", c.tol, "Newton tolerance on the reflection residual");
    solve->add_option("--max-iters", c.max_iters, "Newton iteration cap");
    solve->add_option("--dedup-tol", c.dedup_tol, "Max-coordinate distance for duplicates");
    solve->add_option("--degenerate-tol", c.degenerate_tol, "Hessian eigenvalue threshold");
    solve->add_option("--hessian", c.hessian, "analytic or fd");
    solve->add_option("--threads", c.threads, "Worker threads (0: BILLIARDS_THREADS or hardware)");

    auto* orc = app.add_subcommand("oracle", "Closed-form trajectories inside the unit sphere");
    orc->add_option("--phi", c.phi, "Angle between A and B, in (0, pi)");
    orc->add_option("--m", m_value, "Sphere dimension");
    orc->add_option("--A", A_text, "Start point, comma separated");
    orc->add_option("--B", B_text, "End point, comma separated");
    orc->add_option("--n", c.n, "Number of reflections")->required();

    auto* coho = app.add_subcommand("cohomology", "Cohomology of the open string configuration space of S^m");
    coho->add_option("--m", m_value, "Sphere dimension")->required();
    coho->add_option("--n", c.n, "Number of reflections")->required();
    coho->add_option("--field", c.field, "q, f2, f3, f5, f7, ...");
    coho->add_flag("--products", c.products, "Also compute cup-product constants");

    auto* ver = app.add_subcommand("verify", "Check the Poincare polynomial, products and cup-length");
    ver->add_option("--m", m_value, "Sphere dimension")->required();
    ver->add_option("--n", c.n, "Number of reflections")->required();
    ver->add_option("--field", c.field, "q, f2, f3, f5, f7, ...");

    for (auto* sub : {solve, orc, coho, ver}) {
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", c.out, "Write the report to this file (atomically) instead of stdout");
    }

    CLI::App* active = &app;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        for (auto* sub : {solve, orc, coho, ver}) {
            if (sub->parsed()) active = sub;
        }
        if (solve->parsed()) c.command = Command::Solve;
        if (orc->parsed()) c.command = Command::Oracle;
        if (coho->parsed()) c.command = Command::Cohomology;
        if (ver->parsed()) c.command = Command::Verify;
        if (active->count("--m") > 0) c.m = m_value;
        if (!A_text.empty()) c.A = parse_list(A_text, "--A");
        if (!B_text.empty()) c.B = parse_list(B_text, "--B");
        if (!axes_text.empty()) c.axes = parse_list(axes_text, "--axes");
        c.format = format == "text" ? Format::Text : Format::Json;
        c.validate();
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (active == &app ? app.help() : active->help());
            exit_code = kExitOk;
            return std::nullopt;
        }
        for (auto* sub : {solve, orc, coho, ver}) {
            if (sub->parsed()) active = sub;
        }
        err << "error: " << e.what() << "\n" << active->help();
        exit_code = kExitUsage;
        return std::nullopt;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n" << active->help();
        exit_code = kExitUsage;
        return std::nullopt;
    }
    exit_code = kExitOk;
    return c;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::Solve: return run_solve(config, out, err);
            case Command::Oracle: return run_oracle(config, out);
            case Command::Cohomology: return run_cohomology(config, out, false);
            case Command::Verify: return run_cohomology(config, out, true);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const geometry::DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    const auto config = parse(args, out, err, code);
    if (!config) return code;
    return execute(*config, out, err);
}

}  // namespace billiards::cli
