// SPDX-License-Identifier: Apache-2.0
//
// hybridbf - hybrid RF beamforming with phase shifter and switch networks
// Copyright (C) 2026 The hybridbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include "hbf/channel.hpp"
#include "hbf/errors.hpp"
#include "hbf/hardware.hpp"
#include "hbf/rates.hpp"

#include <CLI11.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace hbf::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Flags shared by every subcommand.
struct CommonFlags
{
    std::vector<int> n;
    int m = 4;
    int k = 0;
    std::vector<int> l;
    std::vector<int> s;
    std::vector<double> snr_db;
    double rho = 0.7;
    int mpc = 2;
    double spacing = 0.5;
    std::string channel = "iid";
    int trials = 1000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string config;
    std::string output;
    bool plot = false;

    std::map<std::string, CLI::Option *> opt;

    bool given(const std::string &name) const
    {
        auto it = opt.find(name);
        return it != opt.end() && it->second->count() > 0;
    }
};

void add_common(CLI::App *sub, CommonFlags &f)
{
    f.opt["n"] = sub->add_option("--n", f.n, "Antenna count(s) N")->delimiter(',');
    f.opt["m"] = sub->add_option("--m", f.m, "RF chains M");
    f.opt["k"] = sub->add_option("--k", f.k, "Users K (defaults to M)");
    f.opt["l"] = sub->add_option("--l", f.l, "Phase shifters per chain L")->delimiter(',');
    f.opt["s"] = sub->add_option("--s", f.s, "Switch group size(s) S")->delimiter(',');
    f.opt["snr-db"] = sub->add_option("--snr-db", f.snr_db, "P/sigma^2 in dB")->delimiter(',');
    f.opt["rho"] = sub->add_option("--rho", f.rho, "Correlation coefficient");
    f.opt["mpc"] = sub->add_option("--mpc", f.mpc, "Multipath components of the sparse channel");
    f.opt["spacing"] = sub->add_option("--spacing", f.spacing, "Antenna spacing d/lambda");
    f.opt["channel"] = sub->add_option("--channel", f.channel, "iid, correlated or sparse")
                           ->check(CLI::IsMember({"iid", "correlated", "sparse"}));
    f.opt["trials"] = sub->add_option("--trials", f.trials, "Monte-Carlo trials");
    f.opt["seed"] = sub->add_option("--seed", f.seed, "Master seed");
    f.opt["threads"] = sub->add_option("--threads", f.threads, "Worker threads (0: all cores)");
    f.opt["config"] = sub->add_option("--config", f.config, "key = value configuration file");
    f.opt["output"] = sub->add_option("-o,--output", f.output, "Output path");
    f.opt["plot"] = sub->add_flag("--plot", f.plot, "Also write an SVG plot next to the CSV");
}

ChannelModel channel_from(const CommonFlags &f)
{
    if (f.channel == "correlated")
        return CorrelatedRayleigh{f.rho};
    if (f.channel == "sparse")
        return SparseGeometric{f.mpc, f.spacing};
    return IidRayleigh{};
}

std::string timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    localtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y%m%d-%H%M%S");
    return os.str();
}

fs::path output_path(const CommonFlags &f, const std::string &stem, const std::string &ext)
{
    if (!f.output.empty())
        return f.output;
    return fs::path("results") / (stem + "-" + timestamp() + ext);
}

std::string trim(const std::string &s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

bool has_flag(const std::vector<std::string> &args, const std::string &key)
{
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string &a) {
        return a == flag || a.rfind(flag + "=", 0) == 0 || (key == "output" && a == "-o");
    });
}

// Scale relative-tolerance checks with the trial count.
double wishart_tolerance(int trials)
{
    return 0.05 * std::sqrt(1000.0 / trials);
}

void print_antenna_errors(std::ostream &out, const SweepResult &res)
{
    out << "N      architecture  L    S   mc_rate      analytic     rel_error\n";
    for (const SweepRow &r : res.rows)
    {
        const auto err = r.relative_error();
        if (!err)
            continue;
        out << std::left << std::setw(7) << r.antennas << std::setw(14) << r.architecture << std::setw(5)
            << r.shifters.value_or(0) << std::setw(4) << r.group.value_or(1) << std::setw(13)
            << format_sig9(r.mc_rate) << std::setw(13) << format_sig9(*r.analytic_rate) << format_sig9(*err)
            << '\n';
    }
}

int cmd_sweep(const std::string &name, const CommonFlags &f, std::ostream &out)
{
    SweepConfig cfg = default_config(parse_scenario(name));
    if (f.given("n"))
        cfg.antennas = f.n;
    cfg.chains = f.m;
    cfg.users = f.given("k") ? f.k : f.m;
    if (f.given("l"))
        cfg.shifters = f.l;
    if (f.given("s"))
        cfg.groups = f.s;
    if (f.given("snr-db"))
        cfg.snr_db = f.snr_db;
    cfg.channel = channel_from(f);
    cfg.rho = f.rho;
    cfg.paths = f.mpc;
    cfg.spacing_ratio = f.spacing;
    cfg.trials = f.trials;
    cfg.seed = f.seed;
    cfg.threads = f.threads;
    validate(cfg);

    const SweepResult res = run_sweep(cfg);
    std::ostringstream csv;
    write_csv(csv, res);

    const fs::path path = output_path(f, "sweep-" + name, ".csv");
    write_atomically(path, csv.str());
    out << "wrote " << res.rows.size() << " rows to " << path.string() << '\n';
    if (f.plot)
    {
        fs::path svg = path;
        svg.replace_extension(".svg");
        write_atomically(svg, render_svg_plot(res));
        out << "wrote plot to " << svg.string() << '\n';
    }
    if (cfg.scenario == Scenario::Antennas)
        print_antenna_errors(out, res);
    return kOk;
}

int cmd_design(const CommonFlags &f, const std::string &arch, std::ostream &out)
{
    const int n = f.given("n") ? f.n.front() : 64;
    if (f.given("n") && f.n.size() != 1)
        throw UsageError("design takes a single --n");
    const int m = f.m;
    const int k = f.given("k") ? f.k : m;
    const double snr = f.given("snr-db") ? f.snr_db.front() : 10.0;

    BeamformerSpec spec;
    if (arch == "sub-ps")
        spec = {Architecture::SubPs, 0, 1};
    else if (arch == "full-switch")
    {
        if (!f.given("l"))
            throw UsageError("--arch full-switch needs --l");
        spec = {Architecture::FullSwitch, f.l.front(), 1};
    }
    else
    {
        if (!f.given("s") && !f.given("l"))
            throw UsageError("--arch sub-switch needs --s or --l");
        if (m < 1 || n % m != 0)
            throw DimensionError("N must be divisible by M");
        const int s = f.given("s") ? f.s.front() : (n / m) / f.l.front();
        const int l = f.given("l") ? f.l.front() : (n / m) / std::max(s, 1);
        spec = {Architecture::SubSwitch, l, s};
    }

    SeededRng rng(f.seed, 0);
    const ChannelMatrix ch = ChannelSampler(channel_from(f), k, n).draw(rng);
    const CMatrix v = svd(ch.h).v.leftCols(std::min<Eigen::Index>(m, ch.h.rows()));
    const RfBeamformer bf = build_beamformer(v, m, spec);
    check_structure(bf);
    const HardwareConfig hw =
        bf.architecture == Architecture::SubSwitch ? extract_hardware_sub(bf) : extract_hardware_full(bf);

    const LinkBudget lb = LinkBudget::from_snr_db(snr);
    const fs::path path = output_path(f, "design-" + arch, ".txt");
    write_atomically(path, hardware_report(hw));

    out << "architecture " << architecture_name(bf.architecture) << '\n';
    out << "channel " << channel_name(ch.model) << " N=" << n << " M=" << m << " K=" << k << " L="
        << bf.shifters_per_chain << " S=" << bf.group_size << '\n';
    if (k == m)
    {
        const RateResult r = hybrid_zf_rate(ch.h, bf, lb);
        out << "snr_db " << format_sig9(snr) << '\n';
        out << "gamma " << format_sig9(r.gamma) << '\n';
        out << "rate_bits " << format_sig9(r.rate_bits) << '\n';
    }
    else
        out << "rate skipped: hybrid ZF needs M = K\n";
    out << "report " << path.string() << '\n';
    return kOk;
}

int cmd_validate(const CommonFlags &f, bool erf_fault, std::ostream &out)
{
    ValidateOptions opts;
    opts.trials = f.trials;
    opts.seed = f.seed;
    opts.threads = f.threads;
    if (erf_fault)
        opts.erf = [](double x) { return hbf::erf(x) + 1e-3; };

    const auto checks = run_validation(opts);
    bool ok = true;
    for (const CheckResult &c : checks)
    {
        out << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(38) << c.name << c.detail << '\n';
        ok = ok && c.pass;
    }
    if (!ok)
    {
        out << "failed:";
        for (const CheckResult &c : checks)
            if (!c.pass)
                out << ' ' << c.name;
        out << '\n';
    }
    return ok ? kOk : kValidationFailed;
}

double quad(const std::function<double(double)> &fn, double a, double b)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(fn, a, b, 15, 1e-14);
}

CheckResult check(std::string name, bool pass, const std::string &detail)
{
    return {std::move(name), pass, detail};
}

std::string sci(double v)
{
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << v;
    return os.str();
}

} // namespace

std::vector<CheckResult> run_validation(const ValidateOptions &opts)
{
    std::vector<CheckResult> out;
    const LinkBudget lb10 = LinkBudget::from_snr_db(10.0);

    {
        double worst = 0.0;
        for (int n : {64, 128, 512})
        {
            const double sub = subps_rate_analytic(4, n, lb10);
            worst = std::max(worst, std::abs(full_switch_rate_analytic(4, n, n / 4, lb10) - sub) / sub);
            worst = std::max(worst, std::abs(sub_switch_rate_analytic(4, 1, n, lb10) - sub) / sub);
        }
        out.push_back(check("degeneracy L=N/M and S=1", worst <= 1e-12, "max rel diff " + sci(worst)));
    }

    {
        // E[V~] from the closed form vs. direct quadrature of v * 2v exp(-v^2) over (alpha, inf)
        double worst = 0.0;
        for (double alpha : {0.0, 0.25, 0.5, std::sqrt(std::log(2.0)), 1.0, 1.5, 2.0})
        {
            const double closed = truncated_rayleigh_mean(alpha, opts.erf);
            const double ref = quad([](double v) { return 2.0 * v * v * std::exp(-v * v); }, alpha, alpha + 12.0);
            worst = std::max(worst, std::abs(closed - ref));
        }
        out.push_back(check("truncated Rayleigh mean (erf form)", worst <= 1e-9, "max abs diff " + sci(worst)));
    }

    {
        double worst = 0.0;
        for (int s = 1; s <= 16; ++s)
        {
            auto integrand = [s](double v) {
                return v * 2.0 * s * v * std::pow(1.0 - std::exp(-v * v), s - 1) * std::exp(-v * v);
            };
            worst = std::max(worst, std::abs(expected_max_rayleigh(s) - quad(integrand, 0.0, 12.0)));
        }
        out.push_back(check("max-of-S Rayleigh mean, S<=16", worst <= 1e-9, "max abs diff " + sci(worst)));
    }

    {
        const int n = 64, k = 4;
        std::vector<double> samples(static_cast<std::size_t>(opts.trials));
        parallel_trials(samples.size(), opts.threads, [&](std::size_t t) {
            SeededRng rng(opts.seed, t);
            samples[t] = zf_digital_rate(iid_rayleigh(k, n, rng).h, lb10).gamma;
        });
        const McStats st = mc_stats(samples);
        const double target = 1.0 / (n - k);
        const double rel = std::abs(st.mean - target) / target;
        const double tol = wishart_tolerance(opts.trials);
        out.push_back(check("Wishart gamma_zf = 1/(N-K)", rel <= tol,
                            "rel err " + sci(rel) + " tol " + sci(tol) + " (" + std::to_string(opts.trials) +
                                " trials)"));
    }

    {
        const int n = 256, m = 4, channels = 100;
        std::vector<double> sums(channels);
        parallel_trials(channels, opts.threads, [&](std::size_t t) {
            SeededRng rng(opts.seed, t);
            const CMatrix v = svd(iid_rayleigh(m, n, rng).h).v;
            sums[t] = v.leftCols(m).cwiseAbs().sum() * std::sqrt(static_cast<double>(n)) / (n * m);
        });
        const double mean = mc_stats(sums).mean;
        const double target = std::sqrt(std::numbers::pi) / 2.0;
        const double rel = std::abs(mean - target) / target;
        out.push_back(check("sqrt(N)|V| mean = sqrt(pi)/2, N=256", rel <= 0.01, "rel err " + sci(rel)));
    }

    {
        const LinkBudget lb30 = LinkBudget::from_snr_db(30.0);
        const double gap = zf_rate_analytic(128, 4, lb30) - subps_rate_analytic(4, 128, lb30);
        const double target = 4.0 * std::log2(16.0 / std::numbers::pi);
        out.push_back(check("high-SNR digital gap", std::abs(gap - target) <= 0.2,
                            "gap " + format_sig9(gap) + " vs " + format_sig9(target)));
    }

    {
        bool ok = true;
        for (std::uint64_t t = 0; t < 20 && ok; ++t)
        {
            SeededRng rng(opts.seed, t);
            const CMatrix v = svd(iid_rayleigh(4, 64, rng).h).v;
            const RfBeamformer full = ps_full_switch(v, 4, 5);
            const RfBeamformer sub = ps_sub_switch(v, 4, 8, 2);
            ok = apply_hardware(extract_hardware_full(full)) == full.f_rf &&
                 apply_hardware(extract_hardware_sub(sub)) == sub.f_rf;
        }
        out.push_back(check("hardware round trip", ok, ok ? "bit-exact" : "mismatch"));
    }
    return out;
}

void write_atomically(const fs::path &path, const std::string &content)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw UsageError("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os)
            throw UsageError("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
    {
        fs::remove(tmp);
        throw UsageError("cannot move output into " + path.string() + ": " + ec.message());
    }
}

std::vector<std::string> config_file_args(const fs::path &path)
{
    std::ifstream is(path);
    if (!is)
        throw UsageError("cannot read config file " + path.string());
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty() || line.front() == '[')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');
        if (!value.empty() && value.front() == '[' && value.back() == ']')
            value = trim(value.substr(1, value.size() - 2));
        value.erase(std::remove(value.begin(), value.end(), ' '), value.end());
        if (key.empty() || key == "config")
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": bad key");
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

std::string render_svg_plot(const SweepResult &result)
{
    struct Series
    {
        std::string label;
        bool analytic = false;
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<Series> series;
    auto series_for = [&](const std::string &label, bool analytic) -> Series & {
        for (Series &s : series)
            if (s.label == label && s.analytic == analytic)
                return s;
        series.push_back({label, analytic, {}});
        return series.back();
    };

    for (const SweepRow &r : result.rows)
    {
        double x = 0.0;
        std::string label = r.architecture;
        if (r.scenario == "snr")
            x = r.snr_db;
        else if (r.scenario == "antennas")
            x = r.antennas;
        else
            x = static_cast<double>(r.chains) * r.shifters.value_or(r.antennas / r.chains);
        if (r.scenario == "channels")
            label = r.channel + " " + label;
        if (r.architecture == "sub-switch" && r.scenario != "antennas")
            label += " S=" + std::to_string(r.group.value_or(1));
        series_for(label, false).pts.emplace_back(x, r.mc_rate);
        if (r.analytic_rate)
            series_for(label, true).pts.emplace_back(x, *r.analytic_rate);
    }

    double xmin = 1e300, xmax = -1e300, ymax = 0.0;
    for (Series &s : series)
    {
        std::sort(s.pts.begin(), s.pts.end());
        for (auto [x, y] : s.pts)
        {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymax = std::max(ymax, y);
        }
    }
    if (series.empty())
        xmin = 0.0, xmax = 1.0;
    if (xmax <= xmin)
        xmax = xmin + 1.0;
    ymax = ymax > 0.0 ? ymax * 1.05 : 1.0;

    const double w = 720, h = 480, left = 70, right = 220, top = 30, bottom = 60;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (w - left - right); };
    auto py = [&](double y) { return h - bottom - y / ymax * (h - top - bottom); };
    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\"" << h - bottom
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
       << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i)
    {
        const double y = ymax * i / 5.0, x = xmin + (xmax - xmin) * i / 5.0;
        os << "<text x=\"" << left - 8 << "\" y=\"" << py(y) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
           << format_sig9(std::round(y * 10) / 10) << "</text>\n";
        os << "<text x=\"" << px(x) << "\" y=\"" << h - bottom + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
           << format_sig9(std::round(x * 10) / 10) << "</text>\n";
    }
    const std::string xlabel = result.rows.empty()                      ? ""
                               : result.rows.front().scenario == "snr"      ? "P/sigma^2 [dB]"
                               : result.rows.front().scenario == "antennas" ? "N"
                                                                            : "ML (phase shifters)";
    os << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 15
       << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    os << "<text x=\"18\" y=\"" << (top + h - bottom) / 2 << "\" font-size=\"13\" transform=\"rotate(-90 18 "
       << (top + h - bottom) / 2 << ")\" text-anchor=\"middle\">sum rate [bits/s/Hz]</text>\n";

    std::size_t colour = 0;
    std::map<std::string, std::size_t> colours;
    for (const Series &s : series)
    {
        if (!colours.count(s.label))
            colours[s.label] = colour++;
        const char *c = palette[colours[s.label] % 10];
        os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.8\""
           << (s.analytic ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        for (auto [x, y] : s.pts)
            os << px(x) << ',' << py(y) << ' ';
        os << "\"/>\n";
    }
    double ly = top + 10;
    for (const auto &[label, idx] : colours)
    {
        os << "<line x1=\"" << w - right + 10 << "\" y1=\"" << ly << "\" x2=\"" << w - right + 35 << "\" y2=\"" << ly
           << "\" stroke=\"" << palette[idx % 10] << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << w - right + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << label
           << "</text>\n";
        ly += 16;
    }
    os << "<text x=\"" << w - right + 10 << "\" y=\"" << ly + 10
       << "\" font-size=\"10\">solid: Monte-Carlo, dashed: closed form</text>\n";
    os << "</svg>\n";
    return os.str();
}

int run(const std::vector<std::string> &input, std::ostream &out, std::ostream &err)
{
    std::vector<std::string> args = input;

    CLI::App app{"Hybrid beamforming with phase shifter and switch networks"};
    app.require_subcommand(1);

    CommonFlags sweep_flags;
    std::string sweep_name;
    CLI::App *sweep = app.add_subcommand("sweep", "Monte-Carlo sweep, written as CSV");
    sweep->add_option("name", sweep_name, "phase-shifters, antennas, snr or channels")
        ->required()
        ->check(CLI::IsMember({"phase-shifters", "antennas", "snr", "channels"}));
    add_common(sweep, sweep_flags);

    CommonFlags design_flags;
    std::string arch = "sub-ps";
    CLI::App *design = app.add_subcommand("design", "Build one beamformer and write its hardware report");
    add_common(design, design_flags);
    design->add_option("--arch", arch, "sub-ps, full-switch or sub-switch")
        ->check(CLI::IsMember({"sub-ps", "full-switch", "sub-switch"}));

    CommonFlags validate_flags;
    bool erf_fault = false;
    CLI::App *validate_cmd = app.add_subcommand("validate", "Fast invariant checks");
    add_common(validate_cmd, validate_flags);
    validate_cmd->add_flag("--inject-erf-fault", erf_fault)->group("");

    try
    {
        // Merge config-file values; flags on the command line win.
        for (std::size_t i = 0; i < args.size(); ++i)
        {
            std::string path;
            if (args[i] == "--config" && i + 1 < args.size())
                path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0)
                path = args[i].substr(9);
            if (path.empty())
                continue;
            const auto extra = config_file_args(path);
            std::vector<std::string> merged;
            for (std::size_t j = 0; j + 1 < extra.size(); j += 2)
                if (!has_flag(args, extra[j].substr(2)))
                {
                    merged.push_back(extra[j]);
                    merged.push_back(extra[j + 1]);
                }
            args.insert(args.end(), merged.begin(), merged.end());
            break;
        }

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, out, err);
        return kUsageError;
    }
    catch (const UsageError &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try
    {
        if (*sweep)
            return cmd_sweep(sweep_name, sweep_flags, out);
        if (*design)
            return cmd_design(design_flags, arch, out);
        return cmd_validate(validate_flags, erf_fault, out);
    }
    catch (const NumericalError &e)
    {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }
    catch (const DimensionError &e)
    {
        err << "invalid configuration: " << e.what() << '\n';
        return kUsageError;
    }
    catch (const UsageError &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    catch (const fs::filesystem_error &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    return run(std::vector<std::string>(argv + std::min(argc, 1), argv + argc), out, err);
}

} // namespace hbf::cli
