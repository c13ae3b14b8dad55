#include "experiment_spec.hpp"

#include "gapcorr/asymptotics.hpp"
#include "gapcorr/coupling.hpp"
#include "gapcorr/errors.hpp"
#include "gapcorr/oracle.hpp"
#include "gapcorr/ucoeff.hpp"

#include <CLI11.hpp>

#include <clocale>
#include <cmath>
#include <fstream>
#include <iostream>
#include <locale>
#include <sstream>

using namespace gapcorr;
using cli::ExperimentSpec;

namespace {

struct Options {
    long prec = 0;
    std::string out;
    std::string mode;
    std::uint64_t seed = 1;
    int trials = 20;
    long rho = 0;
    std::vector<long> R;
    long N = 0;
    std::string spec_path;
};

const int kDigits = 20;

std::string fmt(double v) {
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss.precision(12);
    ss << v;
    return ss.str();
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw SpecError("cannot write " + path);
            file_.imbue(std::locale::classic());
        }
        std::cout.imbue(std::locale::classic());
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

ExperimentSpec resolve(const Options& o) {
    ExperimentSpec spec = cli::load_spec(o.spec_path);
    if (o.prec > 0) spec.prec = o.prec;
    if (!o.mode.empty()) spec.config.mode = cli::parse_mode(o.mode);
    if (o.rho > 0) spec.rho = o.rho;
    if (!o.R.empty()) spec.R_list = o.R;
    if (spec.prec < 32) throw SpecError("precision must be at least 32 bits");
    return spec;
}

mpfr_prec_t prec_or_default(const Options& o) {
    if (o.prec == 0) return kDefaultPrec;
    if (o.prec < 32) throw SpecError("precision must be at least 32 bits");
    return o.prec;
}

int cmd_p(const Options& o, long x, long y) {
    Output out(o.out);
    const ExactPValue v = p_exact(x, y);
    out.os() << "P(" << x << "," << y << ") = " << v.str() << " = " << v.value(prec_or_default(o)).str(kDigits) << "\n";
    return 0;
}

int cmd_u(const Options& o, int s, long a, long b) {
    Output out(o.out);
    const UValue u = u_coeff(s, a, b);
    out.os() << "U_" << s << "(" << a << "," << b << ") = " << u.coeff.get_str()
             << "*sqrt3/(2pi) = " << u.value(prec_or_default(o)).str(kDigits) << "\n";
    return 0;
}

int cmd_corr(const Options& o) {
    const ExperimentSpec spec = resolve(o);
    Output out(o.out);
    out.os() << "R,correlation\n";
    for (long R : spec.R_list) out.os() << R << "," << correlation(spec.config.at(R), spec.prec).str(kDigits) << "\n";
    return 0;
}

int cmd_tshift(const Options& o) {
    const ExperimentSpec spec = resolve(o);
    Output out(o.out);
    out.os() << "R,alpha,beta,T_exact,T_pred,R_T\n";
    for (long R : spec.R_list) {
        const HPReal te = relative_change(spec.config.at(R), spec.alpha, spec.beta, spec.prec);
        const HPReal tp = predict_relative_change(limit_config(spec.config, R), spec.alpha, spec.beta, spec.prec);
        out.os() << R << "," << spec.alpha << "," << spec.beta << "," << te.str(kDigits) << "," << tp.str(kDigits) << ","
                 << (HPReal(R, spec.prec) * te).str(kDigits) << "\n";
    }
    return 0;
}

int cmd_sweep(const Options& o) {
    const ExperimentSpec spec = resolve(o);
    if (spec.config.mode != PositionMode::exact) throw SpecError("sweep needs an exact-mode spec");
    const SweepTable t = convergence_sweep(spec.config, spec.alpha, spec.beta, spec.R_list, spec.prec);
    Output out(o.out);
    out.os() << "R,T_exact,T_pred,R_T,abs_err\n";
    for (const auto& r : t.rows)
        out.os() << r.R << "," << r.t_exact.str(kDigits) << "," << r.t_pred.str(kDigits) << "," << r.r_t.str(kDigits)
                 << "," << r.abs_err.str(kDigits) << "\n";
    out.os() << "# slope," << (t.slope ? fmt(*t.slope) : std::string("omitted")) << "\n";
    return 0;
}

int cmd_step(const Options& o) {
    const ExperimentSpec spec = resolve(o);
    Output out(o.out);
    out.os() << "R,rho,v_x,v_y,pred_x,pred_y,angle_deg,magnitude_ratio\n";
    for (long R : spec.R_list) {
        const MultiholeConfig cfg = spec.config.at(R);
        const LimitConfig lc = limit_config(spec.config, R);
        const CartesianVector v = average_step_exact(cfg, spec.rho, spec.prec);
        const HPReal scale(Rational(lc.holes.at(lc.moving_index).charge()) / (2 * R), spec.prec);
        const CartesianVector pred = scale * oblique_to_cartesian(t_field(lc), spec.prec);
        const bool zero = pred.norm().is_zero();
        out.os() << R << "," << spec.rho << "," << v.cx.str(kDigits) << "," << v.cy.str(kDigits) << ","
                 << pred.cx.str(kDigits) << "," << pred.cy.str(kDigits) << ","
                 << (zero ? std::string("nan") : fmt(angle_deg(v, pred))) << ","
                 << (zero ? std::string("nan") : (v.norm() / pred.norm()).str(kDigits)) << "\n";
    }
    return 0;
}

int cmd_product_check(const Options& o) {
    if (o.trials < 0) throw SpecError("trials must be nonnegative");
    const mpfr_prec_t prec = prec_or_default(o);
    std::mt19937_64 rng(o.seed);
    HPReal worst(prec);
    for (int i = 0; i < o.trials; ++i) {
        const LimitConfig lc = sample_limit_config(rng);
        const HPReal pf = product_formula(lc, prec);
        const HPReal det = det_hp(dominant_matrix(lc, prec), prec).re;
        worst = max(worst, abs(det - pf) / pf);
    }
    const bool ok = worst.to_double() <= 1e-9;
    Output out(o.out);
    out.os() << "trials " << o.trials << ", seed " << o.seed << ", max rel err " << worst.str(6) << ": "
             << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 4;
}

int cmd_dominant_check(const Options& o) {
    const ExperimentSpec spec = resolve(o);
    Output out(o.out);
    out.os() << "R,det_dominant,product_formula,correlation,ratio\n";
    for (long R : spec.R_list) {
        const LimitConfig lc = limit_config(spec.config, R);
        const HPReal det = det_hp(dominant_matrix(lc, spec.prec), spec.prec).re;
        const HPReal pf = product_formula(lc, spec.prec);
        const HPReal w = correlation(spec.config.at(R), spec.prec);
        out.os() << R << "," << det.str(kDigits) << "," << pf.str(kDigits) << "," << w.str(kDigits) << ","
                 << (w / pf).str(kDigits) << "\n";
    }
    return 0;
}

int cmd_oracle(const Options& o) {
    if (o.N < 1) throw SpecError("--N must be positive");
    const TorusGraph g{o.N};
    HolePunch punch;
    std::optional<MultiholeConfig> cfg;
    mpfr_prec_t prec = prec_or_default(o);
    if (!o.spec_path.empty()) {
        const ExperimentSpec spec = resolve(o);
        cfg = spec.config.at(spec.R_list.front());
        punch = HolePunch::from_config(*cfg);
        prec = spec.prec;
    }
    Output out(o.out);
    const Integer full = count_matchings_kasteleyn(g, {});
    const Integer punched = count_matchings_kasteleyn(g, punch);
    out.os() << "N " << o.N << "\n";
    out.os() << "M(T_N) " << full.get_str() << "\n";
    out.os() << "M(T_N minus holes) " << punched.get_str() << "\n";
    if (o.N <= kBacktrackMaxN) out.os() << "backtracking " << count_matchings_bt(g, punch).get_str() << "\n";
    long charge = 0;
    for (const Monomer& m : punch.cells) charge += m.orientation == Orientation::right ? 1 : -1;
    if (charge == 0) {
        const Rational r = torus_correlation(o.N, punch);
        out.os() << "ratio " << r.get_str() << " = " << fmt(r.get_d()) << "\n";
        if (cfg && !cfg->holes.empty())
            out.os() << "determinant correlation " << correlation(*cfg, prec).str(kDigits) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    std::locale::global(std::locale::classic());

    CLI::App app{"Gap correlations on the triangular lattice"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--prec", o.prec, "working precision in bits");
    app.add_option("--out", o.out, "write output to this path");
    app.add_option("--mode", o.mode, "position mode: exact or rounded")->check(CLI::IsMember({"exact", "rounded"}));
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--trials", o.trials, "number of randomized trials");
    app.add_option("--rho", o.rho, "step disc radius");
    app.add_option("--R", o.R, "scale parameter(s), overriding the spec");
    app.add_option("--N", o.N, "torus side");

    long x = 0, y = 0, a = 0, b = 0;
    int s = 0;
    std::function<int()> run;

    auto* p = app.add_subcommand("p", "coupling function P(x,y)");
    p->add_option("x", x)->required();
    p->add_option("y", y)->required();
    p->callback([&] { run = [&] { return cmd_p(o, x, y); }; });

    auto* u = app.add_subcommand("u", "coefficient U_s(a,b)");
    u->add_option("s", s)->required();
    u->add_option("a", a)->required();
    u->add_option("b", b)->required();
    u->callback([&] { run = [&] { return cmd_u(o, s, a, b); }; });

    auto with_spec = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("spec", o.spec_path, "JSON experiment spec")->required();
        c->callback([&, fn] { run = [&, fn] { return fn(o); }; });
    };
    with_spec("corr", "correlation of the spec configuration", cmd_corr);
    with_spec("tshift", "relative change under the spec displacement", cmd_tshift);
    with_spec("sweep", "convergence sweep over the R list (CSV)", cmd_sweep);
    with_spec("step", "average step vector over the rho disc", cmd_step);
    with_spec("dominant-check", "dominant determinant against the product formula", cmd_dominant_check);

    auto* pc = app.add_subcommand("product-check", "randomized product formula check");
    pc->callback([&] { run = [&] { return cmd_product_check(o); }; });

    auto* orc = app.add_subcommand("oracle", "exact torus counts");
    orc->add_option("spec", o.spec_path, "optional JSON experiment spec");
    orc->callback([&] { run = [&] { return cmd_oracle(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return run();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
