#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmn/binomial.hpp"
#include "qmn/grid.hpp"
#include "qmn/identity.hpp"
#include "qmn/io.hpp"
#include "qmn/params.hpp"
#include "qmn/processes.hpp"
#include "qmn/rational.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct ParamFlags {
    std::string q = "1/2";
    std::string mu = "1/2";
    std::string nu = "1/4";
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
    cmd->add_option("--q", flags.q, "deformation parameter q, |q| < 1 (\"p/q\" or decimal)");
    cmd->add_option("--mu", flags.mu, "parameter mu, nu <= mu < 1");
    cmd->add_option("--nu", flags.nu, "parameter nu, 0 <= nu <= mu");
}

template <typename Scalar>
qmn::DeformParams<Scalar> parse_params(const ParamFlags& flags) {
    return qmn::DeformParams<Scalar>(
        qmn::scalar_from_rational<Scalar>(qmn::parse_rational(flags.q)),
        qmn::scalar_from_rational<Scalar>(qmn::parse_rational(flags.mu)),
        qmn::scalar_from_rational<Scalar>(qmn::parse_rational(flags.nu)));
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        qmn::atomic_write(out_path, content);
    }
}

std::vector<long> parse_int_list(const std::string& text) {
    std::vector<long> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        values.push_back(std::stol(item));
    }
    return values;
}

template <typename Scalar>
std::string render_pmf(const qmn::PmfTable<Scalar>& table, const std::string& format) {
    if (format == "csv") return qmn::pmf_table_to_csv(table);
    if (format == "json") return qmn::pmf_table_to_json(table).dump(2) + "\n";
    std::ostringstream out;
    out << table.params.describe() << (table.infinite ? " m=inf" : " m=" + std::to_string(table.m))
        << "\n";
    Scalar cumulative(0);
    for (std::size_t j = 0; j < table.weights.size(); ++j) {
        cumulative += table.weights[j];
        out << "  j=" << j << "  weight=" << qmn::to_display_string(table.weights[j])
            << "  cumulative=" << qmn::to_display_string(cumulative) << "\n";
    }
    return out.str();
}

int run_pmf(const ParamFlags& params, const std::string& m_flag, const std::string& backend,
            double tail_epsilon, const std::string& format, const std::string& out_path) {
    if (m_flag == "inf") {
        auto table = qmn::pmf_table_infinite(parse_params<double>(params), tail_epsilon);
        emit(render_pmf(table, format), out_path);
        return kExitOk;
    }
    const long m = std::stol(m_flag);
    if (m < 0) throw std::invalid_argument("requires m >= 0");
    if (backend == "float") {
        emit(render_pmf(qmn::pmf_table(parse_params<double>(params), m), format), out_path);
    } else {
        emit(render_pmf(qmn::pmf_table(parse_params<qmn::Rational>(params), m), format), out_path);
    }
    return kExitOk;
}

struct VerifyFlags {
    std::vector<std::string> checks{"normalization", "symmetry", "recurrence",
                                    "lemma-recursion", "mc-duality"};
    std::string grid = "default";
    std::optional<ParamFlags> single;
    long max_m = 30;
    long max_n = 12;
    long rec_max_n = 10;
    long lemma_max_m = 8;
    long mc_x = 2;
    long mc_y = 3;
    long samples = 100000;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out_path;
};

int run_verify(const VerifyFlags& flags) {
    std::vector<qmn::DeformParams<qmn::Rational>> grid;
    if (flags.single) {
        grid.push_back(parse_params<qmn::Rational>(*flags.single));
    } else if (flags.grid == "default") {
        grid = qmn::default_grid<qmn::Rational>();
    } else if (flags.grid == "negative-q") {
        grid = qmn::negative_q_grid<qmn::Rational>();
    } else {
        throw std::invalid_argument("unknown grid '" + flags.grid + "'");
    }

    qmn::Report combined;
    auto append = [&combined](qmn::Report r) {
        combined.records.insert(combined.records.end(),
                                std::make_move_iterator(r.records.begin()),
                                std::make_move_iterator(r.records.end()));
    };
    for (const std::string& check : flags.checks) {
        if (check == "mc-duality") {
            const auto p = flags.single ? parse_params<double>(*flags.single)
                                        : qmn::DeformParams<double>(0.5, 0.5, 0.25);
            append(qmn::mc_duality_check(p, flags.mc_x, flags.mc_y, flags.samples, flags.seed));
            continue;
        }
        for (const auto& p : grid) {
            if (check == "normalization") {
                append(qmn::verify_normalization(p, flags.max_m));
            } else if (check == "symmetry") {
                append(qmn::verify_symmetry(p, flags.max_n));
            } else if (check == "recurrence") {
                append(qmn::verify_recurrence_consistency(p, flags.rec_max_n));
            } else if (check == "lemma-recursion") {
                append(qmn::verify_lemma_recursion(p, flags.lemma_max_m));
            } else {
                throw std::invalid_argument("unknown check '" + check + "'");
            }
        }
    }

    std::string content = flags.format == "csv" ? qmn::report_to_csv(combined)
                                                : qmn::report_to_json(combined).dump(2) + "\n";
    emit(content, flags.out_path);
    const std::size_t failures =
        static_cast<std::size_t>(std::count_if(combined.records.begin(), combined.records.end(),
                                               [](const auto& r) { return !r.pass; }));
    std::cerr << combined.records.size() << " checks, " << failures << " failed\n";
    return combined.all_pass() ? kExitOk : kExitCheckFailed;
}

struct SimulateFlags {
    ParamFlags params;
    std::string particles = "0";
    long ring = 8;
    std::string init;
    long steps = 100;
    long replicas = 1;
    std::uint64_t seed = 1;
    std::string direction;
    double tail_epsilon = 1e-12;
    std::string format = "csv";
    std::string out_path;
};

int run_simulate_tasep(const SimulateFlags& flags) {
    const int direction = flags.direction == "left" ? -1 : +1;
    qmn::ParticleConfig init;
    for (long p : parse_int_list(flags.particles)) init.positions.push_back(p);
    auto summary = qmn::run_tasep_ensemble(init, parse_params<double>(flags.params),
                                           flags.steps, flags.replicas, flags.seed,
                                           direction, flags.tail_epsilon);
    emit(flags.format == "json" ? qmn::summary_to_json(summary).dump(2) + "\n"
                                : qmn::summary_to_csv(summary),
         flags.out_path);
    return kExitOk;
}

int run_simulate_boson(const SimulateFlags& flags) {
    const int direction = flags.direction == "right" ? +1 : -1;
    qmn::OccupationConfig init;
    init.ring_size = flags.ring;
    if (flags.init.empty()) {
        init.counts.assign(static_cast<std::size_t>(flags.ring), 0);
        if (flags.ring > 0) init.counts[0] = 1;
    } else {
        init.counts = parse_int_list(flags.init);
    }
    auto summary = qmn::run_boson_ensemble(init, parse_params<double>(flags.params),
                                           flags.steps, flags.replicas, flags.seed,
                                           direction, flags.tail_epsilon);
    emit(flags.format == "json" ? qmn::summary_to_json(summary).dump(2) + "\n"
                                : qmn::summary_to_csv(summary),
         flags.out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"(q,mu,nu)-deformed binomial distribution: tables, identity checks, simulations"};
    app.require_subcommand(1);

    // pmf
    ParamFlags pmf_params;
    std::string pmf_m = "0", pmf_backend = "exact", pmf_format = "table", pmf_out;
    double pmf_tail_epsilon = 1e-12;
    auto* pmf_cmd = app.add_subcommand("pmf", "print a pmf table (j, weight, cumulative)");
    add_param_flags(pmf_cmd, pmf_params);
    pmf_cmd->add_option("--m", pmf_m, "support bound (nonnegative integer, or \"inf\")");
    pmf_cmd->add_option("--backend", pmf_backend, "exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    pmf_cmd->add_option("--tail-epsilon", pmf_tail_epsilon, "truncation mass for m=inf");
    pmf_cmd->add_option("--format", pmf_format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    pmf_cmd->add_option("--out", pmf_out, "output path (default: stdout)");

    // verify
    VerifyFlags vf;
    ParamFlags vf_single;
    bool vf_has_single = false;
    auto* verify_cmd = app.add_subcommand("verify", "run identity checks, write a report");
    verify_cmd->add_option("--checks", vf.checks,
                           "subset of: normalization symmetry recurrence lemma-recursion mc-duality")
        ->delimiter(',');
    verify_cmd->add_option("--grid", vf.grid, "default|negative-q");
    auto* vq = verify_cmd->add_option("--q", vf_single.q, "single-triple grid: q");
    verify_cmd->add_option("--mu", vf_single.mu, "single-triple grid: mu")->needs(vq);
    verify_cmd->add_option("--nu", vf_single.nu, "single-triple grid: nu")->needs(vq);
    verify_cmd->add_option("--max-m", vf.max_m, "normalization bound");
    verify_cmd->add_option("--max-n", vf.max_n, "symmetry bound");
    verify_cmd->add_option("--rec-max-n", vf.rec_max_n, "recurrence bound");
    verify_cmd->add_option("--lemma-max-m", vf.lemma_max_m, "lemma-recursion bound");
    verify_cmd->add_option("--x", vf.mc_x, "mc-duality x");
    verify_cmd->add_option("--y", vf.mc_y, "mc-duality y");
    verify_cmd->add_option("--samples", vf.samples, "mc-duality sample count");
    verify_cmd->add_option("--seed", vf.seed, "mc-duality seed");
    verify_cmd->add_option("--format", vf.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    verify_cmd->add_option("--out", vf.out_path, "report path (default: stdout)");
    verify_cmd->callback([&] { vf_has_single = vq->count() > 0; });

    // simulate
    SimulateFlags sf;
    auto* sim_cmd = app.add_subcommand("simulate", "run a particle-system simulation");
    sim_cmd->require_subcommand(1);
    auto* tasep_cmd = sim_cmd->add_subcommand("tasep", "exclusion process on the line");
    tasep_cmd->add_option("--particles", sf.particles,
                          "initial positions, strictly ordered (e.g. \"10,7,3\")");
    auto* boson_cmd = sim_cmd->add_subcommand("boson", "zero-range process on a ring");
    boson_cmd->add_option("--ring", sf.ring, "ring size L");
    boson_cmd->add_option("--init", sf.init, "initial occupancies (e.g. \"2,0,1,0\")");
    for (auto* cmd : {tasep_cmd, boson_cmd}) {
        add_param_flags(cmd, sf.params);
        cmd->add_option("--steps", sf.steps, "number of parallel update steps");
        cmd->add_option("--replicas", sf.replicas, "independent replicas");
        cmd->add_option("--seed", sf.seed, "base seed; replica r uses seed+r");
        cmd->add_option("--direction", sf.direction, "jump direction (left|right)")
            ->check(CLI::IsMember({"left", "right"}));
        cmd->add_option("--tail-epsilon", sf.tail_epsilon, "unbounded-headroom truncation");
        cmd->add_option("--format", sf.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", sf.out_path, "output path (default: stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (pmf_cmd->parsed()) {
            return run_pmf(pmf_params, pmf_m, pmf_backend, pmf_tail_epsilon, pmf_format, pmf_out);
        }
        if (verify_cmd->parsed()) {
            if (vf_has_single) vf.single = vf_single;
            return run_verify(vf);
        }
        if (tasep_cmd->parsed()) return run_simulate_tasep(sf);
        if (boson_cmd->parsed()) return run_simulate_boson(sf);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
