#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "commands.hpp"
#include "hafband/circuit.hpp"
#include "hafband/lhaf.hpp"
#include "hafband/matrix_io.hpp"

namespace hafband::tools {

namespace {

struct LhafArgs {
    std::string file;
    std::string kernel = "banded";
    double tol = 0.0;
};

struct SampleArgs {
    std::optional<std::size_t> modes;
    std::size_t depth = 1;
    std::string squeeze = "0.3";
    std::uint64_t shots = 1000;
    std::uint32_t cutoff = 4;
    std::optional<std::uint64_t> seed;
    std::string kernel = "banded";
    std::string output = "-";
    unsigned jobs = 1;
    std::string circuit;
};

struct VerifyArgs {
    std::size_t trials = 500;
    std::size_t max_n = 10;
    std::optional<std::uint64_t> seed;
};

struct BenchArgs {
    std::vector<std::size_t> n{200, 400, 800};
    std::vector<std::size_t> w{10};
    std::size_t reps = 5;
    std::string output = "-";
    std::string kernel = "banded";
    std::optional<std::uint64_t> seed;
};

int cmd_lhaf(const LhafArgs& a, std::ostream& out) {
    const SymmetricMatrix m = read_matrix_file(a.file);
    const Complex v = evaluate_lhaf(m, parse_kernel(a.kernel), a.tol);
    out << format_double(v.real()) << ' ' << format_double(v.imag()) << '\n';
    return kExitOk;
}

// Writes to the named file, or to `fallback` for "-".
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open '" + path + "' for writing");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }
    bool is_file() const { return file_.is_open(); }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

int cmd_sample(const SampleArgs& a, std::ostream& out, std::ostream& err) {
    const std::uint64_t seed = resolve_seed(a.seed);
    CircuitSpec circuit;
    if (!a.circuit.empty()) {
        std::ifstream in(a.circuit);
        if (!in) throw ParseError("cannot open circuit file '" + a.circuit + "'");
        circuit = read_circuit(in);
        if (a.modes && *a.modes != circuit.modes) {
            throw std::invalid_argument("--M does not match the circuit file");
        }
    } else {
        if (!a.modes) throw std::invalid_argument("--M is required without --circuit");
        if (*a.modes == 0) throw std::invalid_argument("--M must be at least 1");
        circuit = random_local_circuit(*a.modes, a.depth, seed);
    }
    const std::size_t m = circuit.modes;
    const SqueezeConfig cfg = parse_squeeze(a.squeeze, m);
    SamplerConfig scfg;
    scfg.cutoff = a.cutoff;
    scfg.shots = a.shots;
    scfg.seed = seed;
    scfg.kernel = parse_kernel(a.kernel);
    if (scfg.shots == 0) throw std::invalid_argument("--shots must be at least 1");

    const Eigen::MatrixXcd u = circuit_unitary(circuit);
    const auto t0 = std::chrono::steady_clock::now();
    const auto records = run_shots(u, cfg, scfg, std::max(1u, a.jobs));
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Sink sink(a.output, out);
    std::ostream& os = sink.get();
    os << "# hafband sample M=" << m << " D=" << circuit.depth << " seed=" << seed
       << " circuit_seed=" << circuit.seed << " cutoff=" << scfg.cutoff
       << " kernel=" << kernel_name(scfg.kernel) << " shots=" << scfg.shots << " squeeze=";
    for (std::size_t i = 0; i < m; ++i) os << (i ? "," : "") << format_double(cfg.strengths[i]);
    os << '\n';
    double photons = 0.0;
    double min_mass = 1.0;
    std::size_t retries = 0;
    for (const auto& r : records) {
        for (std::size_t i = 0; i < m; ++i) os << (i ? " " : "") << r.pattern[i];
        os << '\n';
        photons += static_cast<double>(r.pattern.total());
        retries += r.retries;
        for (const auto& s : r.steps) min_mass = std::min(min_mass, s.captured_mass);
    }
    os.flush();
    if (!os) throw std::runtime_error("failed writing samples");

    std::ostream& summary = sink.is_file() ? out : err;
    const double n = static_cast<double>(records.size());
    summary << "mean total photons: " << photons / n << '\n'
            << "wall time per shot: " << wall / n << " s\n"
            << "heterodyne retries: " << retries << '\n'
            << "smallest captured conditional mass: " << min_mass << '\n';
    return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    const std::uint64_t seed = resolve_seed(a.seed);
    if (a.max_n < 1 || a.max_n > kVerifyMaxN) {
        throw std::invalid_argument("--max-n must be between 1 and " + std::to_string(kVerifyMaxN));
    }
    if (a.trials == 0) {
        err << "warning: zero trials requested; nothing was checked\n";
        out << "trials 0\n";
        return kExitOk;
    }
    const VerifyReport rep = run_verify(a.trials, a.max_n, seed);
    std::map<MatrixFamily, std::size_t> per_family;
    for (const auto& c : rep.cases) ++per_family[c.family];
    out << "trials " << a.trials << " max-n " << a.max_n << " seed " << seed << '\n';
    for (const auto& [f, count] : per_family) out << "  " << family_name(f) << ": " << count << '\n';
    out << "max relative error banded " << format_double(rep.max_banded_error) << '\n'
        << "max relative error sparse " << format_double(rep.max_sparse_error) << '\n';
    if (rep.max_error() > kVerifyTol) {
        out << "FAIL: error above " << format_double(kVerifyTol) << '\n';
        return kExitCheckFailed;
    }
    out << "OK\n";
    return kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(a.seed);
    const Kernel kernel = parse_kernel(a.kernel);
    if (a.reps < kBenchMinReps) {
        throw std::invalid_argument("--reps must be at least " + std::to_string(kBenchMinReps));
    }
    for (std::size_t w : a.w) {
        if (w > kBenchMaxW) throw std::invalid_argument("--w values are limited to " + std::to_string(kBenchMaxW));
        for (std::size_t n : a.n) {
            if (w >= n) throw std::invalid_argument("every w must be smaller than every n");
        }
    }
    std::vector<BenchRow> rows;
    for (std::size_t w : a.w) {
        for (std::size_t n : a.n) rows.push_back(bench_point(n, w, a.reps, kernel, seed));
    }
    Sink sink(a.output, out);
    sink.get() << kBenchCsvHeader << '\n';
    for (const auto& r : rows) sink.get() << bench_csv_line(r) << '\n';
    sink.get().flush();

    // Diagnostics go after the CSV so stdout stays parseable up to the blank line.
    std::ostringstream diag;
    for (const auto& d : doubling_ratios(rows)) {
        diag << "# w=" << d.w << " n " << d.n_from << "->" << d.n_to << ": time ratio " << d.ratio
             << " (model 2)\n";
    }
    for (const auto& r : width_ratios(rows)) {
        diag << "# n=" << r.n << " w " << r.w << "->" << r.w + 2 << ": time ratio " << r.ratio << " (model "
             << r.model << ", factor " << std::max(r.ratio / r.model, r.model / r.ratio) << ")\n";
    }
    if (!diag.str().empty()) out << (sink.is_file() ? "" : "\n") << diag.str();
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Loop hafnians of banded matrices and Gaussian boson sampling"};
    app.require_subcommand(1);

    LhafArgs lhaf;
    auto* lhaf_cmd = app.add_subcommand("lhaf", "Loop hafnian of a matrix file; prints \"re im\"");
    lhaf_cmd->add_option("file", lhaf.file, "Matrix file")->required();
    lhaf_cmd->add_option("--kernel", lhaf.kernel, "banded, sparse or oracle")->capture_default_str();
    lhaf_cmd->add_option("--tol", lhaf.tol, "Entries with magnitude <= tol count as zero")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    SampleArgs sample;
    auto* sample_cmd = app.add_subcommand("sample", "Chain-rule samples from a brick-wall interferometer");
    sample_cmd->add_option("--M", sample.modes, "Number of modes");
    sample_cmd->add_option("--D", sample.depth, "Circuit depth")->capture_default_str();
    sample_cmd->add_option("--squeeze", sample.squeeze, "Squeezing: one value or a comma list")
        ->capture_default_str();
    sample_cmd->add_option("--shots", sample.shots)->capture_default_str();
    sample_cmd->add_option("--cutoff", sample.cutoff, "Per-mode photon cap")->capture_default_str();
    sample_cmd->add_option("--seed", sample.seed, "Seed (default: HAFBAND_SEED, else 0)");
    sample_cmd->add_option("--kernel", sample.kernel)->capture_default_str();
    sample_cmd->add_option("--output", sample.output, "Sample file, - for stdout")->capture_default_str();
    sample_cmd->add_option("--jobs", sample.jobs, "Worker threads")->capture_default_str();
    sample_cmd->add_option("--circuit", sample.circuit, "Circuit file instead of a random circuit");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Compare the kernels against brute-force enumeration");
    verify_cmd->add_option("--trials", verify.trials)->capture_default_str();
    verify_cmd->add_option("--max-n", verify.max_n)->capture_default_str();
    verify_cmd->add_option("--seed", verify.seed);

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time the kernels; writes CSV");
    bench_cmd->add_option("--n", bench.n, "Matrix sizes")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--w", bench.w, "Bandwidths")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--reps", bench.reps)->capture_default_str();
    bench_cmd->add_option("--output", bench.output, "CSV file, - for stdout")->capture_default_str();
    bench_cmd->add_option("--kernel", bench.kernel)->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*lhaf_cmd) return cmd_lhaf(lhaf, out);
        if (*sample_cmd) return cmd_sample(sample, out, err);
        if (*verify_cmd) return cmd_verify(verify, out, err);
        if (*bench_cmd) return cmd_bench(bench, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitInputError;
}

}  // namespace hafband::tools
