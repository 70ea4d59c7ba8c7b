// Command-line harness: data generation, sketch construction, merging,
// estimation, and the benchmark grid with CSV output.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hlll/datagen.hpp"
#include "hlll/distribution.hpp"
#include "hlll/errors.hpp"
#include "hlll/sketch_io.hpp"

using namespace hlll;

namespace {

constexpr const char* kCsvHeader =
    "algorithm,m,n,seed,input_kind,update_seconds,merge_seconds,estimate,size_bits,"
    "compress_calls";

constexpr std::uint64_t kDefaultMaxN = std::uint64_t{1} << 26;

// ---------------------------------------------------------------------------
// algorithm names

struct AlgoSpec {
    bool is_hll;
    HlllVariant variant;  // meaningful when !is_hll
};

std::optional<AlgoSpec> parse_algo(const std::string& s) {
    if (s == "hll")
        return AlgoSpec{true, HlllVariant::Exact};
    if (s == "hlll")
        return AlgoSpec{false, HlllVariant::Exact};
    if (s == "hlll-star")
        return AlgoSpec{false, HlllVariant::Star};
    if (s == "hlll-b")
        return AlgoSpec{false, HlllVariant::BaseMin};
    return std::nullopt;
}

std::string algo_name(const AnySketch& s) {
    switch (kind_of(s)) {
        case SketchKind::Hll: return "hll";
        case SketchKind::HlllExact: return "hlll";
        case SketchKind::HlllStar: return "hlll-star";
        case SketchKind::HlllBaseMin: return "hlll-b";
    }
    return "?";
}

unsigned log2_of_m(std::uint64_t m) {
    if (m < 16 || (m & (m - 1)) != 0)
        throw std::invalid_argument("--m must be a power of two >= 16");
    unsigned log2m = 0;
    while ((std::uint64_t{1} << log2m) < m)
        ++log2m;
    if (log2m > 18)
        throw std::invalid_argument("--m must be at most 2^18");
    return log2m;
}

// ---------------------------------------------------------------------------
// sketch-agnostic accessors

std::uint64_t sketch_m(const AnySketch& s) {
    return std::visit([](const auto& sk) { return sk.register_count(); }, s);
}

std::uint64_t sketch_size_bits(const AnySketch& s) {
    return std::visit([](const auto& sk) { return sk.size_bits(); }, s);
}

double sketch_estimate(const AnySketch& s, EstimatorConfig cfg) {
    return std::visit([&](const auto& sk) { return sk.estimate(cfg); }, s);
}

EstimateBreakdown sketch_breakdown(const AnySketch& s, EstimatorConfig cfg) {
    return std::visit([&](const auto& sk) { return sk.estimate_breakdown(cfg); }, s);
}

std::uint64_t sketch_compress_calls(const AnySketch& s) {
    if (const auto* h = std::get_if<HlllSketch>(&s))
        return h->compress_calls();
    return 0;
}

// ---------------------------------------------------------------------------
// CSV records

struct BenchRecord {
    std::string algorithm;
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string input_kind;
    double update_seconds = 0.0;
    std::optional<double> merge_seconds;
    double estimate = 0.0;
    std::uint64_t size_bits = 0;
    std::uint64_t compress_calls = 0;

    std::string to_csv() const {
        char est[64];
        std::snprintf(est, sizeof est, "%.17g", estimate);
        std::ostringstream os;
        os << algorithm << ',' << m << ',' << n << ',' << seed << ',' << input_kind << ',';
        char t[64];
        std::snprintf(t, sizeof t, "%.9f", update_seconds);
        os << t << ',';
        if (merge_seconds) {
            std::snprintf(t, sizeof t, "%.9f", *merge_seconds);
            os << t;
        }
        os << ',' << est << ',' << size_bits << ',' << compress_calls;
        return os.str();
    }
};

// Rows go to the --csv file (header written when the file is empty or new)
// or to stdout.
class CsvSink {
public:
    explicit CsvSink(const std::string& path) {
        if (path.empty()) {
            out_ = &std::cout;
            std::cout << kCsvHeader << '\n';
            return;
        }
        const bool fresh =
            !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
        file_.open(path, std::ios::app);
        if (!file_)
            throw std::runtime_error("cannot open CSV file: " + path);
        out_ = &file_;
        if (fresh)
            file_ << kCsvHeader << '\n';
    }

    void write(const BenchRecord& r) { *out_ << r.to_csv() << '\n'; }

private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

// ---------------------------------------------------------------------------
// stream feeding

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Feeds n generated elements, timing only the update loop. Data is
// produced in chunks ahead of each timed section so generation cost never
// pollutes the measurement.
template <typename Sketch>
double feed_generated(Sketch& s, InputKind kind, std::uint64_t n, std::uint64_t seed) {
    constexpr std::uint64_t kChunk = 1 << 22;
    DataGenerator gen(seed);
    double total = 0.0;

    std::vector<std::uint64_t> u64s;
    std::vector<std::string> strings;
    std::vector<PairUpdate> pairs;

    std::uint64_t left = n;
    while (left > 0) {
        const std::uint64_t take = left < kChunk ? left : kChunk;
        switch (kind) {
            case InputKind::U64: {
                u64s.clear();
                for (std::uint64_t i = 0; i < take; ++i)
                    u64s.push_back(gen.next_u64());
                const auto t0 = Clock::now();
                for (const auto k : u64s)
                    s.update(k);
                total += seconds_since(t0);
                break;
            }
            case InputKind::Ascii8: {
                strings.clear();
                for (std::uint64_t i = 0; i < take; ++i)
                    strings.push_back(gen.next_ascii8());
                const auto t0 = Clock::now();
                for (const auto& k : strings)
                    s.update(std::string_view{k});
                total += seconds_since(t0);
                break;
            }
            case InputKind::Pair: {
                pairs.clear();
                for (std::uint64_t i = 0; i < take; ++i)
                    pairs.push_back(gen.next_pair(s.log2m()));
                const auto t0 = Clock::now();
                for (const auto p : pairs)
                    s.insert_pair(p.j, p.r);
                total += seconds_since(t0);
                break;
            }
        }
        left -= take;
    }
    return total;
}

struct ParsedStream {
    InputKind kind;
    std::vector<std::uint64_t> u64s;
    std::vector<std::string> strings;
    std::vector<PairUpdate> pairs;

    std::uint64_t size() const {
        switch (kind) {
            case InputKind::U64: return u64s.size();
            case InputKind::Ascii8: return strings.size();
            case InputKind::Pair: return pairs.size();
        }
        return 0;
    }
};

ParsedStream read_stream_file(const std::string& path, InputKind kind, std::uint64_t m) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open stream file: " + path);
    ParsedStream out;
    out.kind = kind;
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        switch (kind) {
            case InputKind::U64: {
                std::size_t pos = 0;
                const std::uint64_t v = std::stoull(line, &pos);
                if (pos != line.size())
                    throw std::invalid_argument("bad u64 at line " + std::to_string(lineno));
                out.u64s.push_back(v);
                break;
            }
            case InputKind::Ascii8:
                out.strings.push_back(line);
                break;
            case InputKind::Pair: {
                std::istringstream ls(line);
                std::uint64_t j;
                unsigned r;
                if (!(ls >> j >> r) || j >= m || r < 1 || r > 64)
                    throw std::invalid_argument("bad pair at line " + std::to_string(lineno));
                out.pairs.push_back(
                    {static_cast<std::uint32_t>(j), static_cast<std::uint8_t>(r)});
                break;
            }
        }
    }
    return out;
}

template <typename Sketch>
double feed_parsed(Sketch& s, const ParsedStream& stream) {
    const auto t0 = Clock::now();
    switch (stream.kind) {
        case InputKind::U64:
            for (const auto k : stream.u64s)
                s.update(k);
            break;
        case InputKind::Ascii8:
            for (const auto& k : stream.strings)
                s.update(std::string_view{k});
            break;
        case InputKind::Pair:
            for (const auto p : stream.pairs)
                s.insert_pair(p.j, p.r);
            break;
    }
    return seconds_since(t0);
}

InputKind kind_or_throw(const std::string& s) {
    const auto k = parse_input_kind(s);
    if (!k)
        throw std::invalid_argument("--kind must be one of u64, ascii8, pair");
    return *k;
}

// ---------------------------------------------------------------------------
// subcommand options

struct GenerateOpts {
    std::string kind = "u64";
    std::uint64_t n = 0;
    std::uint64_t m = 1024;
    std::uint64_t seed = 0;
    std::string out;
};

struct BuildOpts {
    std::string algo = "hll";
    std::uint64_t m = 1024;
    unsigned kappa = HlllSketch::kDefaultKappa;
    std::string kind = "u64";
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string in;
    std::string out;
    std::string csv;
    std::string hash = "xxh64";
    std::uint64_t hash_seed = 0;
    bool no_large_range = false;
};

struct MergeOpts {
    std::string file_a;
    std::string file_b;
    std::string out;
    std::string csv;
    bool no_large_range = false;
};

struct EstimateOpts {
    std::string file;
    bool verbose = false;
    bool no_large_range = false;
};

struct ConvertOpts {
    std::string in;
    std::string algo = "hlll";
    unsigned kappa = HlllSketch::kDefaultKappa;
    std::string out;
};

struct InspectOpts {
    std::string file;
};

struct OracleOpts {
    std::uint64_t m = 1024;
    std::uint64_t n = 0;
    unsigned kappa = HlllSketch::kDefaultKappa;
    int base = -1;
    std::string csv;
};

struct BenchOpts {
    std::vector<std::string> algos{"hll", "hlll", "hlll-star", "hlll-b"};
    std::vector<std::uint64_t> m_list{1024};
    std::string kind = "pair";
    unsigned trials = 3;
    std::uint64_t seed = 0;
    std::uint64_t max_n = kDefaultMaxN;
    unsigned i_min = 4;
    unsigned i_max = 30;
    unsigned kappa = HlllSketch::kDefaultKappa;
    std::string csv;
    bool with_merge = false;
    bool no_large_range = false;
};

// ---------------------------------------------------------------------------
// subcommand implementations

void run_generate(const GenerateOpts& o) {
    const InputKind kind = kind_or_throw(o.kind);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::trunc);
        if (!file)
            throw std::runtime_error("cannot open output file: " + o.out);
        out = &file;
    }
    const unsigned log2m = log2_of_m(o.m);
    DataGenerator gen(o.seed);
    for (std::uint64_t i = 0; i < o.n; ++i) {
        switch (kind) {
            case InputKind::U64:
                *out << gen.next_u64() << '\n';
                break;
            case InputKind::Ascii8:
                *out << gen.next_ascii8() << '\n';
                break;
            case InputKind::Pair: {
                const auto p = gen.next_pair(log2m);
                *out << p.j << ' ' << static_cast<unsigned>(p.r) << '\n';
                break;
            }
        }
    }
}

void run_build(const BuildOpts& o) {
    const auto algo = parse_algo(o.algo);
    if (!algo)
        throw std::invalid_argument("--algo must be one of hll, hlll, hlll-star, hlll-b");
    const InputKind kind = kind_or_throw(o.kind);
    const unsigned log2m = log2_of_m(o.m);
    const HashConfig hash_cfg{o.hash, o.hash_seed};
    if (o.hash != "xxh64")
        throw std::invalid_argument("unknown hash id: " + o.hash);

    AnySketch sketch = algo->is_hll
                           ? AnySketch{HllSketch(log2m, hash_cfg)}
                           : AnySketch{HlllSketch(log2m, algo->variant, o.kappa, hash_cfg)};

    double update_seconds = 0.0;
    std::uint64_t fed = 0;
    if (!o.in.empty()) {
        const auto stream = read_stream_file(o.in, kind, o.m);
        fed = stream.size();
        update_seconds =
            std::visit([&](auto& sk) { return feed_parsed(sk, stream); }, sketch);
    } else {
        fed = o.n;
        update_seconds = std::visit(
            [&](auto& sk) { return feed_generated(sk, kind, o.n, o.seed); }, sketch);
    }

    if (!o.out.empty())
        save_file(o.out, sketch);

    const EstimatorConfig est_cfg{.large_range_correction = !o.no_large_range};
    BenchRecord rec{
        .algorithm = o.algo,
        .m = o.m,
        .n = fed,
        .seed = o.in.empty() ? o.seed : 0,
        .input_kind = std::string(to_string(kind)),
        .update_seconds = update_seconds,
        .merge_seconds = std::nullopt,
        .estimate = sketch_estimate(sketch, est_cfg),
        .size_bits = sketch_size_bits(sketch),
        .compress_calls = sketch_compress_calls(sketch),
    };
    CsvSink sink(o.csv);
    sink.write(rec);
}

void run_merge(const MergeOpts& o) {
    const AnySketch a = load_file(o.file_a);
    const AnySketch b = load_file(o.file_b);

    const bool a_hll = std::holds_alternative<HllSketch>(a);
    const bool b_hll = std::holds_alternative<HllSketch>(b);
    if (a_hll != b_hll)
        throw IncompatibleSketchError("cannot merge HLL with HLLL sketches");

    AnySketch merged = a;
    const auto t0 = Clock::now();
    if (a_hll)
        merged = HllSketch::merge(std::get<HllSketch>(a), std::get<HllSketch>(b));
    else
        merged = HlllSketch::merge(std::get<HlllSketch>(a), std::get<HlllSketch>(b));
    const double merge_seconds = seconds_since(t0);

    if (!o.out.empty())
        save_file(o.out, merged);

    const EstimatorConfig est_cfg{.large_range_correction = !o.no_large_range};
    BenchRecord rec{
        .algorithm = algo_name(merged),
        .m = sketch_m(merged),
        .n = 0,
        .seed = 0,
        .input_kind = "file",
        .update_seconds = 0.0,
        .merge_seconds = merge_seconds,
        .estimate = sketch_estimate(merged, est_cfg),
        .size_bits = sketch_size_bits(merged),
        .compress_calls = sketch_compress_calls(merged),
    };
    CsvSink sink(o.csv);
    sink.write(rec);
}

void run_estimate(const EstimateOpts& o) {
    const AnySketch s = load_file(o.file);
    const EstimatorConfig cfg{.large_range_correction = !o.no_large_range};
    const auto bd = sketch_breakdown(s, cfg);
    std::printf("%.17g\n", bd.result);
    if (o.verbose) {
        std::printf("raw_estimate=%.17g\n", bd.raw_estimate);
        std::printf("zero_registers=%llu\n",
                    static_cast<unsigned long long>(bd.zero_registers));
        std::printf("branch=%s\n", std::string(to_string(bd.branch)).c_str());
        std::printf("result=%.17g\n", bd.result);
    }
}

void run_convert(const ConvertOpts& o) {
    const auto algo = parse_algo(o.algo);
    if (!algo)
        throw std::invalid_argument("--algo must be one of hll, hlll, hlll-star, hlll-b");
    const AnySketch in = load_file(o.in);

    const HllSketch plain = std::holds_alternative<HllSketch>(in)
                                ? std::get<HllSketch>(in)
                                : std::get<HlllSketch>(in).to_hll();
    AnySketch out = algo->is_hll
                        ? AnySketch{plain}
                        : AnySketch{HlllSketch::from_hll(plain, algo->variant, o.kappa)};
    save_file(o.out, out);
}

void run_inspect(const InspectOpts& o) {
    const AnySketch s = load_file(o.file);
    std::printf("kind=%s\n", algo_name(s).c_str());
    std::visit(
        [](const auto& sk) {
            std::printf("log2m=%u\n", sk.log2m());
            std::printf("m=%llu\n", static_cast<unsigned long long>(sk.register_count()));
            std::printf("hash=%s\n", sk.hash_config().hash_id.c_str());
            std::printf("hash_seed=%llu\n",
                        static_cast<unsigned long long>(sk.hash_config().seed));
            std::printf("size_bits=%llu\n", static_cast<unsigned long long>(sk.size_bits()));
        },
        s);
    if (const auto* h = std::get_if<HlllSketch>(&s)) {
        std::printf("kappa=%u\n", h->kappa());
        std::printf("base=%u\n", h->base());
        std::printf("sparse_count=%llu\n",
                    static_cast<unsigned long long>(h->sparse_count()));
        std::printf("min_value=%u\n", h->min_value());
        std::printf("min_count=%llu\n", static_cast<unsigned long long>(h->min_count()));
    }
    std::printf("estimate=%.17g\n", sketch_estimate(s, {}));
}

void run_oracle(const OracleOpts& o) {
    if (o.m < 1)
        throw std::invalid_argument("--m must be >= 1");
    RegisterDistribution dist(o.m, o.n);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.csv.empty()) {
        file.open(o.csv, std::ios::trunc);
        if (!file)
            throw std::runtime_error("cannot open CSV file: " + o.csv);
        out = &file;
    }
    *out << "k,pmf,cdf\n";
    char buf[128];
    for (unsigned k = 0; k <= 63; ++k) {
        std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g", k, dist.pmf(k),
                      dist.cdf(static_cast<double>(k)));
        *out << buf << '\n';
    }

    // summary statistics; kept off the table stream
    std::ostream& stats = o.csv.empty() ? std::cerr : std::cout;
    stats << "entropy_bits=" << dist.entropy_bits() << '\n';
    if (o.base >= 0) {
        stats << "expected_sparse_count="
              << expected_sparse_count(o.m, o.n, static_cast<unsigned>(o.base), o.kappa)
              << '\n';
    }
}

std::uint64_t grid_n(unsigned i) {
    // n = 2^{i/2} rounded half to even
    return static_cast<std::uint64_t>(
        std::nearbyint(std::pow(2.0, static_cast<double>(i) / 2.0)));
}

void run_bench(const BenchOpts& o) {
    const InputKind kind = kind_or_throw(o.kind);
    std::vector<AlgoSpec> algos;
    for (const auto& name : o.algos) {
        const auto a = parse_algo(name);
        if (!a)
            throw std::invalid_argument("unknown algorithm: " + name);
        algos.push_back(*a);
    }
    if (o.i_min < 4 || o.i_max > 60 || o.i_min > o.i_max)
        throw std::invalid_argument("--i-min/--i-max must satisfy 4 <= i_min <= i_max <= 60");

    CsvSink sink(o.csv);
    const EstimatorConfig est_cfg{.large_range_correction = !o.no_large_range};

    for (const std::uint64_t m : o.m_list) {
        const unsigned log2m = log2_of_m(m);
        for (unsigned i = o.i_min; i <= o.i_max; ++i) {
            const std::uint64_t n = grid_n(i);
            if (n > o.max_n)
                break;
            for (unsigned trial = 0; trial < o.trials; ++trial) {
                const std::uint64_t trial_seed = derive_trial_seed(o.seed, trial);
                for (std::size_t ai = 0; ai < algos.size(); ++ai) {
                    AnySketch sketch =
                        algos[ai].is_hll
                            ? AnySketch{HllSketch(log2m)}
                            : AnySketch{HlllSketch(log2m, algos[ai].variant, o.kappa)};

                    BenchRecord rec;
                    rec.algorithm = o.algos[ai];
                    rec.m = m;
                    rec.n = n;
                    rec.seed = trial_seed;
                    rec.input_kind = std::string(to_string(kind));

                    if (!o.with_merge) {
                        rec.update_seconds = std::visit(
                            [&](auto& sk) { return feed_generated(sk, kind, n, trial_seed); },
                            sketch);
                    } else {
                        // split the stream into halves, build, time the merge
                        AnySketch half_b = sketch;
                        const std::uint64_t na = n / 2;
                        double build_s = std::visit(
                            [&](auto& sk) { return feed_generated(sk, kind, na, trial_seed); },
                            sketch);
                        // the second half continues the same stream
                        DataGenerator skip(trial_seed);
                        for (std::uint64_t s = 0; s < na; ++s) {
                            switch (kind) {
                                case InputKind::U64: skip.next_u64(); break;
                                case InputKind::Ascii8: skip.next_ascii8(); break;
                                case InputKind::Pair: skip.next_pair(log2m); break;
                            }
                        }
                        // feed remaining n - na elements from the advanced
                        // generator state by streaming manually
                        const std::uint64_t nb = n - na;
                        std::visit(
                            [&](auto& sk) {
                                const auto t0 = Clock::now();
                                for (std::uint64_t s = 0; s < nb; ++s) {
                                    switch (kind) {
                                        case InputKind::U64:
                                            sk.update(skip.next_u64());
                                            break;
                                        case InputKind::Ascii8:
                                            sk.update(std::string_view{skip.next_ascii8()});
                                            break;
                                        case InputKind::Pair: {
                                            const auto p = skip.next_pair(log2m);
                                            sk.insert_pair(p.j, p.r);
                                            break;
                                        }
                                    }
                                }
                                build_s += seconds_since(t0);
                            },
                            half_b);

                        const auto t0 = Clock::now();
                        if (algos[ai].is_hll)
                            sketch = HllSketch::merge(std::get<HllSketch>(sketch),
                                                      std::get<HllSketch>(half_b));
                        else
                            sketch = HlllSketch::merge(std::get<HlllSketch>(sketch),
                                                       std::get<HlllSketch>(half_b));
                        rec.merge_seconds = seconds_since(t0);
                        rec.update_seconds = build_s;
                    }

                    rec.estimate = sketch_estimate(sketch, est_cfg);
                    rec.size_bits = sketch_size_bits(sketch);
                    rec.compress_calls = sketch_compress_calls(sketch);
                    if (!o.with_merge)
                        rec.merge_seconds = std::nullopt;
                    sink.write(rec);
                }
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HyperLogLog / HyperLogLogLog cardinality sketches"};
    app.require_subcommand(1);

    GenerateOpts gen_o;
    auto* gen = app.add_subcommand("generate", "Emit a deterministic element stream");
    gen->add_option("--kind", gen_o.kind, "u64, ascii8, or pair");
    gen->add_option("--n", gen_o.n, "element count")->required();
    gen->add_option("--m", gen_o.m, "register count (pair kind)");
    gen->add_option("--seed", gen_o.seed, "stream seed");
    gen->add_option("--out", gen_o.out, "output file (default stdout)");

    BuildOpts build_o;
    auto* build = app.add_subcommand("build", "Build a sketch from a stream");
    build->add_option("--algo", build_o.algo, "hll, hlll, hlll-star, hlll-b");
    build->add_option("--m", build_o.m, "register count (power of two in [2^4, 2^18])");
    build->add_option("--kappa", build_o.kappa, "dense offset bits (hlll variants)");
    build->add_option("--kind", build_o.kind, "u64, ascii8, or pair");
    build->add_option("--n", build_o.n, "elements to generate (ignored with --in)");
    build->add_option("--seed", build_o.seed, "stream seed");
    build->add_option("--in", build_o.in, "read the stream from a file");
    build->add_option("--out", build_o.out, "write the sketch here (.hlls)");
    build->add_option("--csv", build_o.csv, "append the record to this CSV file");
    build->add_option("--hash", build_o.hash, "hash function id");
    build->add_option("--hash-seed", build_o.hash_seed, "hash seed");
    build->add_flag("--no-large-range-correction", build_o.no_large_range);

    MergeOpts merge_o;
    auto* merge = app.add_subcommand("merge", "Merge two sketch files");
    merge->add_option("a", merge_o.file_a, "first sketch")->required();
    merge->add_option("b", merge_o.file_b, "second sketch")->required();
    merge->add_option("--out", merge_o.out, "write the merged sketch here");
    merge->add_option("--csv", merge_o.csv, "append the record to this CSV file");
    merge->add_flag("--no-large-range-correction", merge_o.no_large_range);

    EstimateOpts est_o;
    auto* est = app.add_subcommand("estimate", "Print the cardinality estimate");
    est->add_option("file", est_o.file, "sketch file")->required();
    est->add_flag("--verbose", est_o.verbose, "print the estimate breakdown");
    est->add_flag("--no-large-range-correction", est_o.no_large_range);

    ConvertOpts conv_o;
    auto* conv = app.add_subcommand("convert", "Convert between sketch representations");
    conv->add_option("in", conv_o.in, "input sketch")->required();
    conv->add_option("--algo", conv_o.algo, "target: hll, hlll, hlll-star, hlll-b");
    conv->add_option("--kappa", conv_o.kappa, "dense offset bits for hlll targets");
    conv->add_option("--out", conv_o.out, "output sketch file")->required();

    InspectOpts insp_o;
    auto* insp = app.add_subcommand("inspect", "Print sketch header and summary fields");
    insp->add_option("file", insp_o.file, "sketch file")->required();

    OracleOpts oracle_o;
    auto* oracle = app.add_subcommand("oracle", "Register distribution tables (CSV)");
    oracle->add_option("--m", oracle_o.m, "register count")->required();
    oracle->add_option("--n", oracle_o.n, "distinct elements")->required();
    oracle->add_option("--kappa", oracle_o.kappa, "window width for expected sparse count");
    oracle->add_option("--base", oracle_o.base, "base for expected sparse count");
    oracle->add_option("--csv", oracle_o.csv, "write the table to this file");

    BenchOpts bench_o;
    auto* bench = app.add_subcommand("bench", "Run the experiment grid, one CSV row per cell");
    bench->add_option("--algos", bench_o.algos, "algorithms to run")->delimiter(',');
    bench->add_option("--m-list", bench_o.m_list, "register counts")->delimiter(',');
    bench->add_option("--kind", bench_o.kind, "input kind");
    bench->add_option("--trials", bench_o.trials, "repetitions per cell");
    bench->add_option("--seed", bench_o.seed, "base seed; per-trial seeds are derived");
    bench->add_option("--max-n", bench_o.max_n, "skip grid points with n above this");
    bench->add_option("--i-min", bench_o.i_min, "grid exponent lower bound (n = 2^{i/2})");
    bench->add_option("--i-max", bench_o.i_max, "grid exponent upper bound");
    bench->add_option("--kappa", bench_o.kappa, "dense offset bits (hlll variants)");
    bench->add_option("--csv", bench_o.csv, "append rows to this CSV file");
    bench->add_flag("--merge", bench_o.with_merge, "time merging two half-stream sketches");
    bench->add_flag("--no-large-range-correction", bench_o.no_large_range);

    try {
        app.parse(argc, argv);
        if (gen->parsed())
            run_generate(gen_o);
        else if (build->parsed())
            run_build(build_o);
        else if (merge->parsed())
            run_merge(merge_o);
        else if (est->parsed())
            run_estimate(est_o);
        else if (conv->parsed())
            run_convert(conv_o);
        else if (insp->parsed())
            run_inspect(insp_o);
        else if (oracle->parsed())
            run_oracle(oracle_o);
        else if (bench->parsed())
            run_bench(bench_o);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return 3;
    } catch (const IncompatibleSketchError& e) {
        std::cerr << "incompatible sketches: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
