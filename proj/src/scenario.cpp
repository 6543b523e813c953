#include "cosshell/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cosshell/so3.hpp"

namespace cosshell {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed)
{
    if (!j.is_object())
        throw SchemaError(where + ": expected an object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw SchemaError(where + ": unknown key '" + item.key() + "'");
}

double get_num(const json& j, const std::string& where, const std::string& key, double dflt,
               bool required = false)
{
    if (!j.contains(key)) {
        if (required)
            throw SchemaError(where + ": missing key '" + key + "'");
        return dflt;
    }
    if (!j[key].is_number())
        throw SchemaError(where + "." + key + ": expected a number");
    return j[key].get<double>();
}

Eigen::Vector3d get_vec3(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
        throw SchemaError(where + ": expected an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_json(const Eigen::Vector3d& v)
{
    return json::array({v.x(), v.y(), v.z()});
}

EdgeBC parse_edge(const json& j, const std::string& where)
{
    EdgeBC e;
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "clamped")
            e.type = EdgeBC::Type::clamped;
        else if (s == "free")
            e.type = EdgeBC::Type::free_edge;
        else
            throw SchemaError(where + ": unknown edge spec '" + s + "'");
        return e;
    }
    check_keys(j, where, {"type", "rotation", "translation", "force", "couple"});
    const std::string t = j.value("type", "");
    if (t == "dirichlet") {
        e.type = EdgeBC::Type::dirichlet;
        if (j.contains("rotation")) e.rotation = get_vec3(j["rotation"], where + ".rotation");
        if (j.contains("translation")) e.translation = get_vec3(j["translation"], where + ".translation");
        if (j.contains("force") || j.contains("couple"))
            throw SchemaError(where + ": dirichlet edge cannot carry tractions");
    } else if (t == "traction") {
        e.type = EdgeBC::Type::traction;
        if (j.contains("force")) e.force = get_vec3(j["force"], where + ".force");
        if (j.contains("couple")) e.couple = get_vec3(j["couple"], where + ".couple");
        if (j.contains("rotation") || j.contains("translation"))
            throw SchemaError(where + ": traction edge cannot prescribe placement");
    } else {
        throw SchemaError(where + ".type: expected dirichlet|traction");
    }
    return e;
}

json edge_json(const EdgeBC& e)
{
    switch (e.type) {
    case EdgeBC::Type::clamped:
        return "clamped";
    case EdgeBC::Type::free_edge:
        return "free";
    case EdgeBC::Type::dirichlet: {
        json j;
        j["type"] = "dirichlet";
        j["rotation"] = vec3_json(e.rotation);
        j["translation"] = vec3_json(e.translation);
        return j;
    }
    case EdgeBC::Type::traction: {
        json j;
        j["type"] = "traction";
        j["force"] = vec3_json(e.force);
        j["couple"] = vec3_json(e.couple);
        return j;
    }
    }
    return {};
}

Domain parse_domain(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2)
        throw SchemaError(where + ": expected [[u0,u1],[v0,v1]]");
    Domain d{j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(), j[1][1].get<double>()};
    if (!(d.u1 > d.u0) || !(d.v1 > d.v0))
        throw SchemaError(where + ": domain must have positive extent");
    return d;
}

} // namespace

Scenario Scenario::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open scenario: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return from_json(j);
}

Scenario Scenario::from_json(const json& j)
{
    Scenario s;
    check_keys(j, "scenario",
               {"version", "chart", "grid", "material", "variant", "boundary", "loads", "solver", "output",
                "koiter"});
    if (!j.contains("version") || !j["version"].is_number_integer())
        throw SchemaError("scenario: missing integer 'version'");
    s.version = j["version"].get<int>();
    if (s.version != 1)
        throw SchemaError("scenario: unsupported version " + std::to_string(s.version));

    const json& jc = j.at("chart");
    check_keys(jc, "chart", {"kind", "radius", "domain", "csv"});
    s.chart_kind = jc.value("kind", "");
    if (s.chart_kind == "plate") {
        s.domain = parse_domain(jc.at("domain"), "chart.domain");
    } else if (s.chart_kind == "cylinder" || s.chart_kind == "sphere-cap") {
        s.radius = get_num(jc, "chart", "radius", 1.0, true);
        if (!(s.radius > 0))
            throw SchemaError("chart.radius must be > 0");
        s.domain = parse_domain(jc.at("domain"), "chart.domain");
    } else if (s.chart_kind == "sampled-grid") {
        if (!jc.contains("csv") || !jc["csv"].is_string())
            throw SchemaError("chart: sampled-grid needs 'csv'");
        s.chart_csv = jc["csv"].get<std::string>();
    } else {
        throw SchemaError("chart.kind: expected plate|cylinder|sphere-cap|sampled-grid");
    }

    const json& jg = j.at("grid");
    check_keys(jg, "grid", {"n_u", "n_v"});
    s.n_u = static_cast<int>(get_num(jg, "grid", "n_u", 0, true));
    s.n_v = static_cast<int>(get_num(jg, "grid", "n_v", 0, true));
    if (s.n_u < 3 || s.n_v < 3)
        throw SchemaError("grid: n_u and n_v must be at least 3");

    const json& jm = j.at("material");
    check_keys(jm, "material", {"mu", "lambda", "mu_c", "L_c", "b1", "b2", "b3", "h"});
    s.material.mu = get_num(jm, "material", "mu", 0, true);
    s.material.lambda = get_num(jm, "material", "lambda", 0, true);
    s.material.mu_c = get_num(jm, "material", "mu_c", 0, true);
    s.material.L_c = get_num(jm, "material", "L_c", 0, true);
    s.material.b1 = get_num(jm, "material", "b1", 0, true);
    s.material.b2 = get_num(jm, "material", "b2", 0, true);
    s.material.b3 = get_num(jm, "material", "b3", 0, true);
    s.material.h = get_num(jm, "material", "h", 0, true);
    try {
        s.material.validate();
    } catch (const Error& e) {
        throw SchemaError(std::string("material: ") + e.what());
    }

    s.variant = parse_variant(j.value("variant", "harmonic"));

    if (j.contains("boundary")) {
        const json& jb = j["boundary"];
        check_keys(jb, "boundary", {"u_min", "u_max", "v_min", "v_max"});
        const char* names[4] = {"u_min", "u_max", "v_min", "v_max"};
        for (int k = 0; k < 4; ++k)
            if (jb.contains(names[k]))
                s.edges[k] = parse_edge(jb[names[k]], std::string("boundary.") + names[k]);
    }

    if (j.contains("loads")) {
        const json& jl = j["loads"];
        check_keys(jl, "loads", {"force", "couple", "profile", "csv"});
        if (jl.contains("force")) s.load_force = get_vec3(jl["force"], "loads.force");
        if (jl.contains("couple")) s.load_couple = get_vec3(jl["couple"], "loads.couple");
        if (jl.contains("profile")) {
            s.load_profile = jl["profile"].get<std::string>();
            if (s.load_profile != "uniform" && s.load_profile != "edge-bump")
                throw SchemaError("loads.profile: expected uniform|edge-bump");
        }
        if (jl.contains("csv")) s.loads_csv = jl["csv"].get<std::string>();
    }

    if (j.contains("solver")) {
        const json& js = j["solver"];
        check_keys(js, "solver", {"tol", "max_iter", "threads", "lbfgs_memory"});
        s.solver.tol = get_num(js, "solver", "tol", -1.0);
        s.solver.max_iter = static_cast<int>(get_num(js, "solver", "max_iter", 2000));
        s.solver.threads = static_cast<int>(get_num(js, "solver", "threads", 1));
        s.solver.lbfgs_memory = static_cast<int>(get_num(js, "solver", "lbfgs_memory", 10));
    }

    if (j.contains("output")) {
        const json& jo = j["output"];
        check_keys(jo, "output", {"solution", "report"});
        s.out_solution = jo.value("solution", s.out_solution);
        s.out_report = jo.value("report", s.out_report);
    }

    if (j.contains("koiter")) {
        const json& jk = j["koiter"];
        check_keys(jk, "koiter", {"fixture", "amplitudes", "bend_radius"});
        s.koiter_fixture = jk.value("fixture", "");
        if (jk.contains("amplitudes")) {
            if (!jk["amplitudes"].is_array())
                throw SchemaError("koiter.amplitudes: expected an array");
            for (const auto& a : jk["amplitudes"])
                s.koiter_amplitudes.push_back(a.get<double>());
        }
        s.koiter_bend_radius = get_num(jk, "koiter", "bend_radius", 5.0);
    }

    return s;
}

json Scenario::to_json() const
{
    json j;
    j["version"] = version;
    json jc;
    jc["kind"] = chart_kind;
    if (chart_kind == "cylinder" || chart_kind == "sphere-cap")
        jc["radius"] = radius;
    if (chart_kind == "sampled-grid")
        jc["csv"] = chart_csv;
    else
        jc["domain"] = json::array({json::array({domain.u0, domain.u1}), json::array({domain.v0, domain.v1})});
    j["chart"] = jc;
    j["grid"] = {{"n_u", n_u}, {"n_v", n_v}};
    j["material"] = {{"mu", material.mu}, {"lambda", material.lambda}, {"mu_c", material.mu_c},
                     {"L_c", material.L_c}, {"b1", material.b1}, {"b2", material.b2},
                     {"b3", material.b3}, {"h", material.h}};
    j["variant"] = to_string(variant);
    json jb;
    const char* names[4] = {"u_min", "u_max", "v_min", "v_max"};
    for (int k = 0; k < 4; ++k)
        jb[names[k]] = edge_json(edges[k]);
    j["boundary"] = jb;
    json jl;
    jl["force"] = vec3_json(load_force);
    jl["couple"] = vec3_json(load_couple);
    jl["profile"] = load_profile;
    if (!loads_csv.empty())
        jl["csv"] = loads_csv;
    j["loads"] = jl;
    j["solver"] = {{"tol", solver.tol}, {"max_iter", solver.max_iter}, {"threads", solver.threads},
                   {"lbfgs_memory", solver.lbfgs_memory}};
    j["output"] = {{"solution", out_solution}, {"report", out_report}};
    if (!koiter_fixture.empty()) {
        json jk;
        jk["fixture"] = koiter_fixture;
        jk["amplitudes"] = koiter_amplitudes;
        jk["bend_radius"] = koiter_bend_radius;
        j["koiter"] = jk;
    }
    return j;
}

std::unique_ptr<Chart> Scenario::make_chart() const
{
    if (chart_kind == "plate")
        return std::make_unique<PlateChart>(domain);
    if (chart_kind == "cylinder")
        return std::make_unique<CylinderChart>(radius, domain);
    if (chart_kind == "sphere-cap")
        return std::make_unique<SphereCapChart>(radius, domain);
    return std::make_unique<SampledGridChart>(SampledGridChart::from_csv(chart_csv));
}

Grid2D Scenario::make_grid() const
{
    Grid2D g;
    g.nu = n_u;
    g.nv = n_v;
    g.dom = chart_kind == "sampled-grid" ? make_chart()->domain() : domain;
    g.validate();
    return g;
}

BoundaryConditions Scenario::make_bcs(const Chart& chart, const Grid2D& grid, const FrameField& frames) const
{
    BoundaryConditions b = BoundaryConditions::none(grid);

    // edge_nodes(k): u_min, u_max, v_min, v_max
    auto for_edge = [&](int k, const std::function<void(int i, int j, bool end)>& fn) {
        if (k < 2) {
            const int i = k == 0 ? 0 : grid.nu - 1;
            for (int j = 0; j < grid.nv; ++j)
                fn(i, j, j == 0 || j == grid.nv - 1);
        } else {
            const int j = k == 2 ? 0 : grid.nv - 1;
            for (int i = 0; i < grid.nu; ++i)
                fn(i, j, i == 0 || i == grid.nu - 1);
        }
    };

    // traction weights and data first, Dirichlet overrides afterwards
    for (int k = 0; k < 4; ++k) {
        const EdgeBC& e = edges[k];
        if (e.type != EdgeBC::Type::traction)
            continue;
        const double dstep = k < 2 ? grid.dv() : grid.du();
        for_edge(k, [&](int i, int j, bool end) {
            const int n = grid.index(i, j);
            const SurfaceFrame& f = *frames[n];
            const double tangent = k < 2 ? f.a2.norm() : f.a1.norm();
            b.kind[n] = NodeBC::traction;
            b.line_weight[n] += (end ? 0.5 : 1.0) * dstep * tangent;
            b.edge_force[n] = e.force;
            b.edge_couple[n] = e.couple;
        });
    }
    for (int k = 0; k < 4; ++k) {
        const EdgeBC& e = edges[k];
        if (e.type != EdgeBC::Type::clamped && e.type != EdgeBC::Type::dirichlet)
            continue;
        const Eigen::Matrix3d r = so3::exp(e.rotation);
        const Eigen::Quaterniond qr(r);
        for_edge(k, [&](int i, int j, bool) {
            const int n = grid.index(i, j);
            b.kind[n] = NodeBC::dirichlet;
            const Eigen::Vector3d y0 = chart.jet(grid.u(i), grid.v(j)).y;
            if (e.type == EdgeBC::Type::clamped) {
                b.m_star[n] = y0;
                b.q_star[n] = Eigen::Quaterniond::Identity();
            } else {
                b.m_star[n] = r * y0 + e.translation;
                b.q_star[n] = qr;
            }
            b.line_weight[n] = 0.0; // Dirichlet wins at shared corners
            b.edge_force[n].setZero();
            b.edge_couple[n].setZero();
        });
    }
    return b;
}

LoadSpec Scenario::make_loads(const Grid2D& grid) const
{
    LoadSpec l = LoadSpec::uniform(grid, load_force, load_couple);
    if (load_profile == "edge-bump") {
        for (int j = 0; j < grid.nv; ++j)
            for (int i = 0; i < grid.nu; ++i) {
                const double su = std::sin(M_PI * (grid.u(i) - grid.dom.u0) / (grid.dom.u1 - grid.dom.u0));
                const double sv = std::sin(M_PI * (grid.v(j) - grid.dom.v0) / (grid.dom.v1 - grid.dom.v0));
                const double bump = su * su * sv * sv;
                l.force[grid.index(i, j)] *= bump;
                l.couple[grid.index(i, j)] *= bump;
            }
    }
    if (loads_csv.empty())
        return l;
    std::ifstream in(loads_csv);
    if (!in)
        throw SchemaError("cannot open loads csv: " + loads_csv);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (lineno == 1 && line.rfind("idx,", 0) == 0)
            continue;
        std::stringstream ss(line);
        std::string tok;
        double vals[7];
        int k = 0;
        while (std::getline(ss, tok, ',') && k < 7)
            vals[k++] = std::stod(tok);
        if (k != 7)
            throw SchemaError(loads_csv + ":" + std::to_string(lineno) +
                              ": expected 7 columns idx,fx,fy,fz,cx,cy,cz");
        const int n = static_cast<int>(vals[0]);
        if (n < 0 || n >= grid.count())
            throw SchemaError(loads_csv + ":" + std::to_string(lineno) + ": node index out of range");
        l.force[n] = {vals[1], vals[2], vals[3]};
        l.couple[n] = {vals[4], vals[5], vals[6]};
    }
    return l;
}

json report_to_json(const SolveReport& rep)
{
    json j;
    j["energy"] = rep.energy;
    j["iterations"] = rep.iterations;
    j["converged"] = rep.converged;
    j["ill_posed_warning"] = rep.ill_posed_warning;
    j["grad_norm"] = rep.grad_norm;
    j["tol"] = rep.tol;
    j["residual_force_max"] = rep.residual_force_max;
    j["residual_moment_max"] = rep.residual_moment_max;
    j["message"] = rep.message;
    j["grad_norm_history"] = rep.grad_norm_history;
    j["energy_history"] = rep.energy_history;
    return j;
}

} // namespace cosshell
