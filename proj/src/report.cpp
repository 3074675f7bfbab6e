#include "billiards/report.hpp"

#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace billiards::report {

namespace {

json vec(const geometry::Vector& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

geometry::Vector vec_from(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a coordinate array");
    geometry::Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j.at(i).get<double>();
    return v;
}

}  // namespace

json to_json(const geometry::SurfaceSpec& surface) {
    return {{"kind", surface.kind_name()}, {"m", surface.m()}, {"axes", surface.axes()}};
}

geometry::SurfaceSpec surface_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "sphere") return geometry::SurfaceSpec::unit_sphere(j.at("m").get<int>());
    if (kind == "ellipsoid") return geometry::SurfaceSpec::ellipsoid(j.at("axes").get<std::vector<double>>());
    throw std::invalid_argument("unknown surface kind '" + kind + "'");
}

json to_json(const configspace::Configuration& c) {
    json points = json::array();
    for (const auto& p : c.points) points.push_back(vec(p.coords));
    return {{"A", vec(c.A.coords)}, {"B", vec(c.B.coords)}, {"points", points}};
}

configspace::Configuration configuration_from_json(const geometry::SurfaceSpec& surface, const json& j) {
    std::vector<geometry::Vector> points;
    for (const auto& p : j.at("points")) points.push_back(vec_from(p));
    return configspace::make_configuration(surface, vec_from(j.at("A")), vec_from(j.at("B")), points);
}

json solve_report(const geometry::SurfaceSpec& surface, const geometry::SurfacePoint& A,
                  const geometry::SurfacePoint& B, int n, const solver::SolveResult& result,
                  const solver::CountVerdict& verdict) {
    json trajectories = json::array();
    for (const auto& t : result.trajectories) {
        json points = json::array();
        for (const auto& p : t.config.points) points.push_back(vec(p.coords));
        trajectories.push_back({{"points", points},
                                {"value", t.value},
                                {"residual", t.residual},
                                {"morse_index", t.morse_index},
                                {"degenerate", t.degenerate},
                                {"min_abs_eig", t.min_abs_eig},
                                {"epsilon_product", t.epsilon_product}});
    }
    double min_eps = 0.0;
    if (!result.trajectories.empty()) {
        min_eps = result.trajectories.front().epsilon_product;
        for (const auto& t : result.trajectories) min_eps = std::min(min_eps, t.epsilon_product);
    }
    return {{"surface", to_json(surface)},
            {"A", vec(A.coords)},
            {"B", vec(B.coords)},
            {"n", n},
            {"count", verdict.count},
            {"bound", verdict.bound},
            {"generic", verdict.generic},
            {"bound_ok", verdict.pass},
            {"min_epsilon_product", min_eps},
            {"starts",
             {{"converged", result.successful_starts},
              {"collisions", result.collisions},
              {"divergences", result.divergences},
              {"max_iterations", result.max_iteration_failures}}},
            {"warnings", result.warnings},
            {"trajectories", trajectories}};
}

json oracle_report(const geometry::Vector& A, const geometry::Vector& B, int n, const std::vector<oracle::SphereTrajectory>& trajectories) {
    json list = json::array();
    for (const auto& t : trajectories) {
        json points = json::array();
        for (const auto& p : t.points) points.push_back(vec(p));
        list.push_back({{"k", t.k}, {"alpha", t.alpha}, {"points", points}});
    }
    return {{"A", vec(A)},
            {"B", vec(B)},
            {"phi", oracle::endpoint_angle(A, B)},
            {"n", n},
            {"count", trajectories.size()},
            {"trajectories", list}};
}

json to_json(const leray::CohomologyReport& r) {
    json dims = json::object();
    for (const auto& [deg, dim] : r.dims) dims[std::to_string(deg)] = dim;
    json products = json::array();
    for (const auto& p : r.products) {
        if (p.constant) {
            products.push_back({p.i, p.j, p.constant->to_string()});
        } else {
            products.push_back({p.i, p.j});
        }
    }
    // checks that were not run are null
    auto flag = [](bool ran, bool v) { return ran ? json(v) : json(nullptr); };
    auto number = [](bool ran, int v) { return ran ? json(v) : json(nullptr); };
    return {{"m", r.m},
            {"n", r.n},
            {"field", r.field.name()},
            {"dims", dims},
            {"poincare", r.poincare},
            {"products", products},
            {"verdicts",
             {{"poincare_ok", r.verdicts.poincare_ok},
              {"products_ok", flag(r.with_products, r.verdicts.products_ok)},
              {"cuplength_ok", flag(r.full, r.verdicts.cuplength_ok)},
              {"sigma_cocycles_ok", flag(r.full, r.verdicts.sigma_cocycles_ok)}}},
            {"cup_length", number(r.full, r.cup_length)},
            {"cuplength_product", r.full ? json(r.cuplength_product) : json(nullptr)},
            {"cat_lower_bound", number(r.full, r.cat_lower_bound)},
            {"cat_lower_bound_rule", "cup_length + 1"}};
}

std::string solve_text(const json& report) {
    std::ostringstream os;
    os << "surface " << report["surface"]["kind"].get<std::string>() << " m=" << report["surface"]["m"]
       << " n=" << report["n"] << "\n";
    os << "trajectories found: " << report["count"] << " (lower bound " << report["bound"]
       << (report["generic"].get<bool>() ? ", generic" : "") << ")\n";
    int k = 0;
    for (const auto& t : report["trajectories"]) {
        os << "  #" << k++ << " value=" << t["value"].get<double>() << " index=" << t["morse_index"]
           << " residual=" << t["residual"].get<double>()
           << (t["degenerate"].get<bool>() ? " degenerate" : "") << "\n";
    }
    for (const auto& w : report["warnings"]) os << "warning: " << w.get<std::string>() << "\n";
    return os.str();
}

std::string cohomology_text(const leray::CohomologyReport& r) {
    std::ostringstream os;
    os << "H*(G(S^" << r.m << ";A,B," << r.n << ")) over " << r.field.name() << "\n";
    os << "Poincare polynomial:";
    bool first = true;
    for (std::size_t d = 0; d < r.poincare.size(); ++d) {
        if (r.poincare[d] == 0) continue;
        os << (first ? " " : " + ") << r.poincare[d] << "*t^" << d;
        first = false;
    }
    os << "\n";
    for (const auto& p : r.products) {
        os << "  sigma_" << p.i << " * sigma_" << p.j << " = ";
        if (p.constant) {
            os << p.constant->to_string() << " * sigma_" << (p.i + p.j) << "\n";
        } else {
            os << "0 (zero group)\n";
        }
    }
    os << "verdicts: poincare=" << r.verdicts.poincare_ok;
    if (r.with_products) os << " products=" << r.verdicts.products_ok;
    if (r.full) os << " cuplength=" << r.verdicts.cuplength_ok << " sigma_cocycles=" << r.verdicts.sigma_cocycles_ok;
    os << "\n";
    if (r.full) os << "cup-length " << r.cup_length << ", category >= " << r.cat_lower_bound << "\n";
    return os.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    const std::filesystem::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename report into place: " + ec.message());
    }
}

}  // namespace billiards::report
