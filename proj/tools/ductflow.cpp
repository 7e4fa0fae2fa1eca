#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "duct/config.hpp"
#include "duct/elliptic.hpp"
#include "duct/error.hpp"
#include "duct/iterate.hpp"
#include "duct/linearization.hpp"
#include "duct/modal.hpp"
#include "duct/parallel.hpp"

namespace fs = std::filesystem;
using namespace duct;

namespace {

struct Options {
    std::string config;
    std::string out = ".";
    std::string field;
    int threads = 0;
    double tol = 0.0;
};

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error(p.string() + ": cannot open for writing");
    f << std::setprecision(17);
    return f;
}

std::string list(const std::vector<double>& v) {
    std::ostringstream os;
    os << std::setprecision(17) << "[";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]";
    return os.str();
}

SolverConfig load(const Options& o) {
    SolverConfig c = parse_config_file(o.config);
    if (o.tol > 0) c.solver.tol = o.tol;
    return c;
}

Problem make_problem(const SolverConfig& c) {
    return Problem(c.inlet, c.gas, c.resolved_length(), c.n_x, c.n_y, c.boundary);
}

void write_field(const FlowField& U, const fs::path& dir) {
    auto f = open_out(dir / "field.csv");
    f << "x,y,p,u,v,rho,E,A_s,M\n";
    for (int i = 0; i < U.grid.nx; ++i)
        for (int j = 0; j < U.grid.ny; ++j)
            f << U.grid.x(i) << ',' << U.grid.y(j) << ',' << U.p(i, j) << ',' << U.u(i, j) << ',' << U.v(i, j)
              << ',' << U.rho(i, j) << ',' << U.E(i, j) << ',' << U.A(i, j) << ',' << U.M(i, j) << '\n';
}

void write_report(const ResidualReport& r, const fs::path& dir, const std::string& status) {
    auto f = open_out(dir / "report.txt");
    const auto& d = r.decomposition;
    f << "status = " << status << '\n'
      << "mass_res = " << r.euler.mass << '\n'
      << "momx_res = " << r.euler.momx << '\n'
      << "momy_res = " << r.euler.momy << '\n'
      << "energy_res = " << r.euler.energy << '\n'
      << "k_norm = " << r.k_norm << '\n'
      << "contraction_ratio = " << list(r.contraction_ratio) << '\n'
      << "iterations = " << r.iterations << '\n'
      << "epsilon_in = " << r.epsilon_in << '\n'
      << "field_delta_norm = " << r.field_delta_norm << '\n'
      << "changes = " << list(r.changes) << '\n'
      << "transport_E_res = " << d.transport_E << '\n'
      << "transport_A_res = " << d.transport_A << '\n'
      << "pressure_res = " << d.pressure << '\n'
      << "tangential_res = " << d.tangential << '\n'
      << "k_norm_fd = " << d.k_norm << '\n'
      << "inlet_E_defect = " << d.inlet_E << '\n'
      << "inlet_A_defect = " << d.inlet_A << '\n'
      << "inlet_v_defect = " << d.inlet_v << '\n'
      << "outlet_p_defect = " << d.outlet_p << '\n'
      << "wall_v_defect = " << d.wall_v << '\n'
      << "symmetry_ok = " << (r.symmetry.ok() ? "true" : "false") << '\n';
}

void write_modes(const FlowField& U, const Problem& pb, int N, const fs::path& dir) {
    Field ph = U.p;
    for (int i = 0; i < U.grid.nx; ++i) ph.row(i).array() -= pb.profile().nodes[i].p;
    Eigen::MatrixXd spec = analyze_field(ph, N);
    auto f = open_out(dir / "modes.csv");
    f << "x";
    for (int m = 0; m <= N; ++m) f << ",p_" << m;
    f << '\n';
    for (int i = 0; i < U.grid.nx; ++i) {
        f << U.grid.x(i);
        for (int m = 0; m <= N; ++m) f << ',' << spec(m, i);
        f << '\n';
    }
}

int cmd_background(const Options& o) {
    SolverConfig c = load(o);
    double l = c.resolved_length();
    auto prof = background_profile(c.inlet, c.gas, l, c.n_x, c.M_min);
    auto f = open_out(fs::path(o.out) / "background.csv");
    f << "x,M,u,rho,p,E,A_s,m\n";
    for (const auto& b : prof.nodes)
        f << b.x << ',' << std::sqrt(b.M2) << ',' << b.u << ',' << b.rho << ',' << b.p << ',' << b.E << ',' << b.A
          << ',' << b.m << '\n';
    auto mono = monotonicity_report(prof, c.gas);
    std::cout << std::setprecision(12) << "length = " << l << "\ncritical_length = " << prof.l_star
              << "\nmonotonicity_ok = " << (mono.ok() ? "true" : "false") << '\n';
    return 0;
}

int cmd_critical(const Options& o) {
    SolverConfig c = parse_config_file(o.config);
    double ls = critical_length(c.inlet, c.gas, c.M_min);
    auto f = open_out(fs::path(o.out) / "critical_length.txt");
    f << "critical_length = " << ls << '\n';
    std::cout << std::setprecision(12) << "critical_length = " << ls << '\n';
    return 0;
}

int cmd_coeffs(const Options& o) {
    SolverConfig c = load(o);
    Background bg(c.inlet, c.gas);
    auto prof = background_profile(c.inlet, c.gas, c.resolved_length(), c.n_x, c.M_min);
    CoeffTables ct(bg, prof);
    auto f = open_out(fs::path(o.out) / "coeffs.csv");
    f << "x,a1,a2,a3,b1,b2,b3,c1,c2,c3,c4";
    for (int i = 1; i <= 9; ++i) f << ",d" << i;
    for (int i = 1; i <= 13; ++i) f << ",e" << i;
    f << ",a4,b4\n";
    for (int i = 0; i < ct.n_x(); ++i) {
        const auto& L = ct.local[i];
        const auto& D = ct.derived[i];
        f << prof.x[i] << ',' << L.a1 << ',' << L.a2 << ',' << L.a3 << ',' << L.b1 << ',' << L.b2 << ',' << L.b3 << ','
          << L.c1 << ',' << L.c2 << ',' << L.c3 << ',' << L.c4;
        for (int k = 1; k <= 9; ++k) f << ',' << L.d[k];
        for (int k = 1; k <= 9; ++k) f << ',' << L.e[k];
        f << ',' << D.e10 << ',' << D.e11 << ',' << D.e12 << ',' << D.e13 << ',' << D.a4 << ',' << D.b4 << '\n';
    }
    std::cout << std::setprecision(12) << "gamma0 = " << ct.gamma0() << '\n';
    return 0;
}

int cmd_scondition(const Options& o) {
    SolverConfig c = load(o);
    double l = c.resolved_length();
    const auto& s = c.scan;
    auto rep = scan_scondition(c.inlet, c.gas, l, c.n_x, s.m_max, s.lambda_min, s.lambda_max, s.steps);
    auto f = open_out(fs::path(o.out) / "scondition.txt");
    f << "margin = " << rep.margin << "\nholds = " << (rep.holds ? "true" : "false") << "\nroots = [";
    for (size_t i = 0; i < rep.roots.size(); ++i) f << (i ? ", " : "") << "(" << rep.roots[i].m << ", " << rep.roots[i].lambda << ")";
    f << "]\nmin_abs_chi = " << list(rep.min_abs_chi) << '\n';
    std::cout << std::setprecision(12) << "margin = " << rep.margin << "\nholds = " << (rep.holds ? "true" : "false")
              << '\n';
    if (!rep.holds) {
        std::cerr << "S-condition fails at lambda = " << c.gas.lambda << '\n';
        return 4;
    }
    return 0;
}

int cmd_elliptic(const Options& o) {
    SolverConfig c = load(o);
    Problem pb = make_problem(c);
    const Grid& g = pb.grid();
    EllipticProblem ep;
    ep.h = g.zeros();
    ep.g0 = Eigen::VectorXd::Zero(g.ny);
    ep.gl.resize(g.ny);
    for (int j = 0; j < g.ny; ++j) ep.gl(j) = c.boundary.pl(g.y(j));
    EllipticSolution s = solve_L1(ep, pb.coeffs(), g, c.solver.n_modes);
    auto f = open_out(fs::path(o.out) / "elliptic.csv");
    f << "x,y,p_hat,p_hat_x\n";
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) f << g.x(i) << ',' << g.y(j) << ',' << s.p(i, j) << ',' << s.px(i, j) << '\n';
    auto m = open_out(fs::path(o.out) / "modes.csv");
    m << "x";
    for (int k = 0; k <= c.solver.n_modes; ++k) m << ",p_" << k;
    m << '\n';
    for (int i = 0; i < g.nx; ++i) {
        m << g.x(i);
        for (int k = 0; k <= c.solver.n_modes; ++k) m << ',' << s.spectrum(k, i);
        m << '\n';
    }
    std::cout << std::setprecision(6) << "tail_fraction = " << s.tail_fraction << '\n';
    return 0;
}

int cmd_solve(const Options& o) {
    SolverConfig c = load(o);
    Problem pb = make_problem(c);
    try {
        FixedPointResult res = run_fixed_point(pb, c.solver);
        write_field(res.U, o.out);
        write_report(res.report, o.out, "converged");
        write_modes(res.U, pb, c.solver.n_modes, o.out);
        std::cout << "iterations = " << res.report.iterations << '\n';
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::numerical) throw;
        auto f = open_out(fs::path(o.out) / "report.txt");
        f << "status = failed\nerror = " << e.what() << "\nepsilon_in = " << boundary_amplitude(c.boundary) << '\n';
        throw;
    }
    return 0;
}

FlowField read_field(const std::string& path, double gamma) {
    std::ifstream f(path);
    if (!f) throw domain_error(path + ": cannot open field");
    std::string line;
    std::getline(f, line);
    if (line != "x,y,p,u,v,rho,E,A_s,M") throw domain_error(path + ": unexpected header");
    std::vector<std::array<double, 9>> rows;
    std::set<double> xs, ys;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::array<double, 9> r{};
        std::stringstream ss(line);
        std::string cell;
        for (int k = 0; k < 9; ++k) {
            if (!std::getline(ss, cell, ',')) throw domain_error(path + ": short row");
            r[k] = std::stod(cell);
        }
        xs.insert(r[0]);
        ys.insert(r[1]);
        rows.push_back(r);
    }
    int nx = int(xs.size()), ny = int(ys.size());
    if (nx < 5 || ny < 5 || size_t(nx) * ny != rows.size()) throw domain_error(path + ": not a tensor grid");
    FlowField U;
    U.grid = Grid(*xs.rbegin(), nx, ny);
    U.p.resize(nx, ny);
    U.A.resize(nx, ny);
    U.E.resize(nx, ny);
    U.v.resize(nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const auto& r = rows[size_t(i) * ny + j];
            U.p(i, j) = r[2];
            U.v(i, j) = r[4];
            U.E(i, j) = r[6];
            U.A(i, j) = r[7];
        }
    U.update(gamma);
    return U;
}

int cmd_verify(const Options& o) {
    SolverConfig c = load(o);
    std::string path = o.field.empty() ? (fs::path(o.out) / "field.csv").string() : o.field;
    FlowField U = read_field(path, c.gas.gamma);
    c.n_x = U.grid.nx;
    c.n_y = U.grid.ny;
    Problem pb = make_problem(c);
    if (std::abs(pb.grid().l - U.grid.l) > 1e-9 * pb.grid().l)
        throw domain_error(path + ": duct length differs from the configuration");
    ResidualReport r = residual_report(U, pb);
    write_report(r, o.out, "verified");
    std::cout << std::setprecision(6) << "mass_res = " << r.euler.mass << "\nmomx_res = " << r.euler.momx
              << "\nmomy_res = " << r.euler.momy << "\nenergy_res = " << r.euler.energy << '\n';
    return 0;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::validation: return 2;
        case ErrorKind::numerical: return 3;
        case ErrorKind::scondition: return 4;
    }
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subsonic duct flow with mass addition"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    if (const char* t = std::getenv("DUCT_THREADS")) o.threads = std::atoi(t);
    if (const char* t = std::getenv("DUCT_TOL")) o.tol = std::atof(t);
    app.add_option("--config", o.config, "JSON configuration")->required()->check(CLI::ExistingFile);
    app.add_option("--out", o.out, "output directory");
    app.add_option("--threads", o.threads, "worker threads");
    app.add_option("--tol", o.tol, "fixed-point tolerance");

    std::map<std::string, int (*)(const Options&)> commands{
        {"background", cmd_background}, {"critical-length", cmd_critical}, {"coeffs", cmd_coeffs},
        {"scondition", cmd_scondition},  {"elliptic-solve", cmd_elliptic},  {"solve", cmd_solve},
        {"verify", cmd_verify}};
    std::map<std::string, CLI::App*> subs;
    for (auto& [name, _] : commands) subs[name] = app.add_subcommand(name);
    subs["verify"]->add_option("--field", o.field, "field CSV to check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (o.threads > 0) set_thread_count(o.threads);
        fs::create_directories(o.out);
        for (auto& [name, sub] : subs)
            if (sub->parsed()) return commands[name](o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
