#include "commands.hpp"

#include "state_io.hpp"

#include "cvq/bifreq.hpp"
#include "cvq/illumination.hpp"
#include "cvq/teleport.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace cvq::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

AirChannel channel_of(const Params& p) {
    return {p.get("channel.mu"), p.get("channel.length"), p.get("channel.n_th"), p.get("channel.eta_ant")};
}

double source_r(const Params& p) { return p.get("source.r"); }
double source_n(const Params& p) { return p.get("source.n"); }

Geometry geometry_of(const std::string& name) {
    if (name == "asym") return Geometry::asym;
    if (name == "sym") return Geometry::sym;
    throw usage_error("geometry must be sym or asym, got '" + name + "'");
}

RegaussMode mode_of(Geometry g) { return g == Geometry::sym ? RegaussMode::sym : RegaussMode::asym; }

QiParams qi_of(const Params& p) {
    return {p.get("illumination.n_s"), p.get("illumination.n_th"), p.get("illumination.gamma"),
            p.get("illumination.eta")};
}

BifreqParams bifreq_of(const Params& p) {
    const double ns = p.get("bifreq.n_s");
    return {p.get("bifreq.eta1"), 0.0, ns, 0.0, p.get("bifreq.n_th"), p.get("bifreq.absorption")};
}

LinkGeometry link_of(const Params& p) {
    LinkGeometry g;
    g.nu = p.get("satellite.nu");
    g.d = p.get("satellite.d");
    g.a = p.get("satellite.a");
    g.e_a = p.get("satellite.e_a");
    g.w0 = p.get("satellite.w0");
    g.a_r = p.get("satellite.a_r");
    return g;
}

/// Swapped symmetric resource from two asym links of half the length.
BipartiteCM swapped(const Params& p) {
    AirChannel half = channel_of(p);
    half.length /= 2;
    const BipartiteCM cm = lossy_tmst(half, source_r(p), source_n(p), Geometry::asym);
    const SymmetricSwap s = swap_symmetric(cm.beta(), cm.alpha(), cm.gamma());
    return BipartiteCM::standard(s.alpha, s.alpha, s.eps);
}

struct Spec {
    std::string description;
    std::string variable;
    double start, stop;
    int count;
    bool log;
    std::vector<std::string> outputs;
    std::function<Row(const Params&, const RunOptions&)> row;
};

Row negativity_row(const Params& p, const RunOptions&) {
    const double lam = std::tanh(source_r(p)), tau = p.get("distill.tau");
    const double bare = ps_tmsv_negativity(lam, 1.0, 0);
    if (lam == 0.0) return {bare, nan, nan, nan, nan, 0.0, 0.0, std::string("subtraction undefined at r = 0")};
    return {bare,
            ps_tmsv_negativity(lam, 1.0, 1) - bare,
            ps_tmsv_negativity(lam, tau, 1) - bare,
            ps_tmsv_negativity(lam, 1.0, 2) - bare,
            ps_tmsv_negativity(lam, tau, 2) - bare,
            ps_tmsv_probability(lam, tau, 1),
            ps_tmsv_probability(lam, tau, 2),
            std::string()};
}

Row qfi_row(const Params& p, const RunOptions&) {
    const QiParams q = qi_of(p);
    const double h = 1e-5, at = std::max(q.eta, 1e-4);
    return {h_q(q), gaussian_qfi(qi_quantum_family(q.n_s, q.n_th, q.gamma), at, h), h_c(q),
            gaussian_qfi(qi_classical_family(q.n_s, q.n_th, q.gamma), at, h, QfiRoute::general)};
}

Row illum_row(const Params& p, const RunOptions&) {
    const QiParams q = qi_of(p);
    const double r = gain(q);
    return {h_q(q), h_c(q), r, 10 * std::log10(r), qi_probe_nu_minus(q.n_s, q.n_th)};
}

Row bifreq_row(const Params& p, const RunOptions&) {
    const BifreqParams b = bifreq_of(p);
    return {h_q_bifreq(b),
            h_c_bifreq(b),
            bifreq_ratio(b),
            bifreq_ratio_limit(b.n_r, b.n_th),
            bifreq_high_noise_limit(b.n_r),
            qcr_residual(b.eta1, b.n_r, b.n_th)};
}

Row teleport_row(const Params& p, const RunOptions& opt) {
    const AirChannel ch = channel_of(p);
    const double r = source_r(p), n = source_n(p), g = p.get("teleport.gain"), theta = p.get("teleport.theta");
    const int k = static_cast<int>(p.get("teleport.k"));
    const std::string& res = opt.resource;
    double f = nan, ffg = nan, fk = nan;
    if (res == "tmst-asym" || res == "tmst-sym") {
        const Geometry geo = res == "tmst-asym" ? Geometry::asym : Geometry::sym;
        const BipartiteCM cm = lossy_tmst(ch, r, n, geo);
        f = fidelity_tmst_channel(ch, r, n, geo);
        ffg = fidelity_finite_gain(cm.alpha(), cm.beta(), cm.gamma(), g, theta);
        fk = fidelity_concatenated(cm, k);
    } else if (res == "swap") {
        AirChannel half = ch;
        half.length /= 2;
        const BipartiteCM cm = lossy_tmst(half, r, n, Geometry::asym);
        f = fidelity_swapped(cm.beta(), cm.alpha(), cm.gamma());
        const SwapFiniteGain s = swap_finite_gain(cm.beta(), cm.alpha(), cm.gamma(), g);
        ffg = fidelity_finite_gain(s.alpha, s.alpha, s.eps, g, theta);
        fk = fidelity_concatenated(swapped(p), k);
    } else if (res == "2ps-sym" || res == "2ps-asym" || res == "h2ps-sym" || res == "h2ps-asym") {
        const Geometry geo = res.ends_with("asym") ? Geometry::asym : Geometry::sym;
        const BipartiteCM cm = lossy_tmst(ch, r, n, geo);
        f = res.front() == 'h' ? fidelity_2ps_heuristic(cm).fbar : fidelity_2ps_general(cm, p.get("distill.tau")).fbar;
    } else {
        throw usage_error("unknown resource: " + res);
    }
    return {eta_eff(ch), f, ffg, fk, f > 0.5 ? 1.0 : 0.0};
}

Row distill_row(const Params& p, const RunOptions& opt) {
    const Geometry geo = geometry_of(opt.geometry);
    const BipartiteCM cm = lossy_tmst(channel_of(p), source_r(p), source_n(p), geo);
    const double tau = p.get("distill.tau");
    const PsOutcome po = ps2_gaussian(cm, tau);
    const Ps2Fidelity fp = fidelity_2ps_general(cm, tau), fh = fidelity_2ps_heuristic(cm);
    const Regaussified rp = regaussify(po.cm, fp.g, mode_of(geo)), rh = regaussify(cm, fh.g, mode_of(geo));
    return {po.probability,
            fidelity_gaussian(cm),
            fp.fbar,
            fh.fbar,
            fp.g,
            fh.g,
            log_negativity(cm),
            log_negativity(rp.cm),
            log_negativity(rh.cm),
            negativity(cm),
            negativity(rp.cm),
            negativity(rh.cm),
            rp.validity.theta,
            rh.validity.theta,
            rp.physical ? 1.0 : 0.0,
            rh.physical ? 1.0 : 0.0};
}

Row swap_row(const Params& p, const RunOptions&) {
    const BipartiteCM s = swapped(p);
    const double g = p.get("teleport.gain"), theta = p.get("teleport.theta");
    AirChannel half = channel_of(p);
    half.length /= 2;
    const BipartiteCM cm = lossy_tmst(half, source_r(p), source_n(p), Geometry::asym);
    const SwapFiniteGain sf = swap_finite_gain(cm.beta(), cm.alpha(), cm.gamma(), g);
    return {s.alpha(),
            s.gamma(),
            negativity(s),
            log_negativity(s),
            cm_validity(s).theta,
            fidelity_gaussian(s),
            fidelity_finite_gain(sf.alpha, sf.alpha, sf.eps, g, theta)};
}

Row channel_row(const Params& p, const RunOptions&) {
    const AirChannel ch = channel_of(p);
    const BipartiteCM a = lossy_tmst(ch, source_r(p), source_n(p), Geometry::asym);
    const BipartiteCM s = lossy_tmst(ch, source_r(p), source_n(p), Geometry::sym);
    return {eta_env(ch), eta_eff(ch), pts_eigenvalues(a).first, pts_eigenvalues(s).first, negativity(a), negativity(s)};
}

Row satellite_row(const Params& p, const RunOptions&) {
    const LinkGeometry g = link_of(p);
    const double tau = tau_diffraction(g), eta = 1 - tau;
    const double n_th = p.get("satellite.n_th"), r = p.get("satellite.r");
    const double asym = eta_threshold_asym(n_th), sym = eta_threshold_sym(n_th, r);
    return {fspl(g.nu, g.d).db,
            directivity(g),
            tau_path(g),
            tau,
            eta,
            eta < asym ? 1.0 : 0.0,
            eta < sym ? 1.0 : 0.0,
            aperture_product_threshold(wavelength(g.nu), sym, g.d),
            g.a_r * g.w0};
}

const std::map<std::string, Spec>& specs() {
    static const std::map<std::string, Spec> s{
        {"negativity",
         {"negativity of photon-subtracted TMSV states against the bare TMSV", "r", 0.0, 2.0, 41, false,
          {"N_TMSV", "dN_2PS_heur", "dN_2PS_prob", "dN_4PS_heur", "dN_4PS_prob", "P2", "P4", "flag"},
          negativity_row}},
        {"qfi",
         {"QI quantum Fisher information: closed forms and numeric Gaussian QFI", "illumination.n_th", 0.1, 1e4, 21,
          true, {"H_Q", "H_Q_numeric", "H_C", "H_C_numeric"}, qfi_row}},
        {"illum",
         {"QI QFIs and the quantum gain", "illumination.n_s", 1e-4, 10.0, 21, true,
          {"H_Q", "H_C", "gain", "gain_db", "probe_nu_minus"}, illum_row}},
        {"bifreq",
         {"bi-frequency illumination QFIs, enhancement ratio and qCRB residual", "bifreq.n_th", 1e-2, 1e4, 31, true,
          {"H_Q", "H_C", "ratio", "ratio_limit", "high_noise_limit", "qcr_residual"}, bifreq_row}},
        {"teleport",
         {"coherent-state teleportation fidelity against distance", "channel.length", 0.0, 600.0, 601, false,
          {"eta_eff", "fidelity", "fidelity_finite_gain", "fidelity_concatenated", "beats_classical"}, teleport_row}},
        {"distill",
         {"two-photon subtraction: probability, fidelities and re-Gaussified entanglement", "channel.length", 0.0,
          600.0, 61, false,
          {"probability", "f_bare", "f_prob", "f_heur", "g", "h", "logneg_bare", "logneg_prob", "logneg_heur",
           "neg_bare", "neg_prob", "neg_heur", "theta_prob", "theta_heur", "physical_prob", "physical_heur"},
          distill_row}},
        {"swap",
         {"entanglement swapping of two half-length asym links", "channel.length", 0.0, 700.0, 71, false,
          {"alpha", "eps", "negativity", "log_negativity", "theta", "fidelity", "fidelity_finite_gain"}, swap_row}},
        {"channel",
         {"open-air channel reflectivities and entanglement of lossy TMST states", "channel.length", 0.0, 700.0, 71,
          false, {"eta_env", "eta_eff", "nu_minus_asym", "nu_minus_sym", "negativity_asym", "negativity_sym"},
          channel_row}},
        {"satellite",
         {"inter-satellite link: path loss, diffraction and entanglement thresholds", "satellite.d", 1e3, 1e7, 25,
          true,
          {"fspl_db", "directivity", "tau_path", "tau_diffraction", "eta", "entangled_asym", "entangled_sym",
           "aperture_product_threshold", "aperture_product"},
          satellite_row}},
    };
    return s;
}

const Spec& spec_of(const std::string& command) {
    const auto it = specs().find(command);
    if (it == specs().end()) throw usage_error("unknown command: " + command);
    return it->second;
}

}  // namespace

const std::vector<std::string>& sweep_commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, s] : specs()) v.push_back(k);
        return v;
    }();
    return names;
}

std::string describe(const std::string& command) { return spec_of(command).description; }

Table run_sweep(const std::string& command, const RunOptions& opt) {
    const Spec& spec = spec_of(command);
    Sweep sw;
    if (opt.sweep) {
        sw = *opt.sweep;
    } else {
        sw.variable = spec.variable;
        sw.start = spec.start;
        sw.stop = spec.stop;
        sw.count = spec.count;
        sw.log = spec.log;
    }
    const std::string key = opt.params.resolve(sw.variable);
    const std::vector<double> xs = sw.points();

    Table t;
    t.columns.push_back(key);
    t.columns.insert(t.columns.end(), spec.outputs.begin(), spec.outputs.end());
    t.rows.resize(xs.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < xs.size(); i = next++) {
            try {
                Params p = opt.params;
                p.set(key, xs[i]);
                Row row{xs[i]};
                const Row out = spec.row(p, opt);
                row.insert(row.end(), out.begin(), out.end());
                t.rows[i] = std::move(row);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = xs.size();
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(xs.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return t;
}

nlohmann::json run_state(const RunOptions& opt) {
    const Params& p = opt.params;
    const double r = source_r(p), n = source_n(p);
    GaussianState s;
    if (opt.kind == "tmsv")
        s = tmsv(r);
    else if (opt.kind == "tmst")
        s = tmst(r, n);
    else if (opt.kind == "lossy-asym" || opt.kind == "lossy-sym")
        s = lossy_tmst(channel_of(p), r, n, opt.kind == "lossy-asym" ? Geometry::asym : Geometry::sym).state();
    else
        throw usage_error("unknown state kind: " + opt.kind);
    const Vec nu = symplectic_eigenvalues(s.sigma);
    nlohmann::json j = {{"state", state_to_json(s)},
                        {"symplectic_eigenvalues", std::vector<double>(nu.data(), nu.data() + nu.size())},
                        {"purity", purity(s)},
                        {"physical", is_physical(s.sigma)}};
    if (s.n_modes == 2) {
        const BipartiteCM cm = BipartiteCM::from_full(s.sigma);
        j["nu_minus_pt"] = pts_eigenvalues(cm).first;
        j["negativity"] = negativity(cm);
        j["log_negativity"] = log_negativity(cm);
    }
    return j;
}

Summary run_summary(const Params& p) {
    const AirChannel ch = channel_of(p);
    const double r = source_r(p), n = source_n(p), g = p.get("teleport.gain"), tau = p.get("distill.tau");
    auto at = [&](double length) {
        AirChannel c = ch;
        c.length = length;
        return c;
    };
    auto ideal = [&](Geometry geo) {
        return classical_limit_distance([&](double l) { return fidelity_tmst_channel(at(l), r, n, geo); }, 0, 2000);
    };
    auto finite = [&](Geometry geo) {
        return classical_limit_distance(
            [&](double l) {
                const BipartiteCM c = lossy_tmst(at(l), r, n, geo);
                return fidelity_finite_gain(c.alpha(), c.beta(), c.gamma(), g);
            },
            0, 2000);
    };
    auto swapped_at = [&](double l) {
        Params q = p;
        q.set("channel.length", l);
        return swapped(q);
    };
    const double swapped_fg = classical_limit_distance(
        [&](double l) {
            const BipartiteCM c = lossy_tmst(at(l / 2), r, n, Geometry::asym);
            const SwapFiniteGain s = swap_finite_gain(c.beta(), c.alpha(), c.gamma(), g);
            return fidelity_finite_gain(s.alpha, s.alpha, s.eps, g);
        },
        0, 3000);
    const double es = classical_limit_distance([&](double l) { return fidelity_gaussian(swapped_at(l)); }, 0, 3000);
    const double bare = ideal(Geometry::asym);

    const BipartiteCM b0 = lossy_tmst(at(0), r, n, Geometry::sym);
    const BipartiteCM heur = regaussify(b0, ps2_heuristic(b0).h, RegaussMode::sym).cm;
    const PsOutcome po = ps2_gaussian(b0, tau);
    const BipartiteCM prob = regaussify(po.cm, po.g, RegaussMode::sym).cm;

    const double sat_nth = p.get("satellite.n_th"), sat_r = p.get("satellite.r");
    const double sym_thr = eta_threshold_sym(sat_nth, sat_r);

    struct Anchor {
        std::string name;
        double value, expected, tolerance;
    };
    const std::vector<Anchor> anchors{
        {"entanglement_reach_asym_m", l_max(ch, r, n, Geometry::asym).length, 550, 5},
        {"entanglement_reach_sym_m", l_max(ch, r, n, Geometry::sym).length, 480, 5},
        {"classical_limit_ideal_asym_m", bare, 479, 1},
        {"classical_limit_ideal_sym_m", ideal(Geometry::sym), 479, 1},
        {"classical_limit_finite_gain_asym_m", finite(Geometry::asym), 434, 1},
        {"classical_limit_finite_gain_sym_m", finite(Geometry::sym), 429, 1},
        {"classical_limit_swapped_finite_gain_m", swapped_fg, 416, 1},
        {"distill_heuristic_log_negativity_gain_pct", 100 * (log_negativity(heur) / log_negativity(b0) - 1), 46, 1},
        {"distill_probabilistic_log_negativity_gain_pct", 100 * (log_negativity(prob) / log_negativity(b0) - 1), 28,
         1},
        {"swap_classical_limit_extension_pct", 100 * (es / bare - 1), 14, 1},
        {"bifreq_ratio_high_reflectivity", bifreq_ratio(bifreq_of(p)), 6.34, 0.1},
        {"qi_gain_db", 10 * std::log10(gain({1e-4, 1e4, 0.0, 0.0})), 10 * std::log10(2.0), 0.01},
        {"satellite_threshold_asym", eta_threshold_asym(sat_nth), 0.0833, 1e-4},
        {"satellite_threshold_sym", sym_thr, 0.0378, 1e-3},
        {"aperture_product_threshold_m2", aperture_product_threshold(wavelength(p.get("satellite.nu")), sym_thr, p.get("satellite.d")), 35, 1},
    };
    Summary s;
    nlohmann::json list = nlohmann::json::array();
    for (const Anchor& a : anchors) {
        const bool pass = std::abs(a.value - a.expected) <= a.tolerance;
        s.all_pass = s.all_pass && pass;
        list.push_back(
            {{"name", a.name}, {"value", a.value}, {"expected", a.expected}, {"tolerance", a.tolerance}, {"pass", pass}});
    }
    s.report = {{"anchors", list},
                {"context",
                 {{"distill_heuristic_negativity_gain_pct", 100 * (negativity(heur) / negativity(b0) - 1)},
                  {"distill_probabilistic_negativity_gain_pct", 100 * (negativity(prob) / negativity(b0) - 1)},
                  {"bifreq_ratio_limit", bifreq_ratio_limit(p.get("bifreq.n_s"), p.get("bifreq.n_th"))}}},
                {"all_pass", s.all_pass}};
    return s;
}

}  // namespace cvq::cli
