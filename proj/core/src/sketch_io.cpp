#include "hlll/sketch_io.hpp"

#include <fstream>
#include <string>
#include <utility>

namespace hlll {

namespace {

constexpr std::uint8_t kMagic[4] = {'H', 'L', 'L', 'L'};
constexpr std::uint8_t kVersion = 1;

void append_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_words(std::vector<std::uint8_t>& out, std::span<const std::uint64_t> words,
                  std::uint64_t count) {
    for (std::uint64_t i = 0; i < count; ++i)
        append_u64_le(out, words[i]);
}

std::vector<std::uint8_t> header(SketchKind kind, unsigned log2m, unsigned kappa,
                                 unsigned base, const HashConfig& cfg,
                                 std::uint64_t sparse_count) {
    if (cfg.hash_id.size() > 255)
        throw std::invalid_argument("serialize: hash id longer than 255 bytes");
    std::vector<std::uint8_t> out;
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    out.push_back(kVersion);
    out.push_back(static_cast<std::uint8_t>(kind));
    out.push_back(static_cast<std::uint8_t>(log2m));
    out.push_back(static_cast<std::uint8_t>(kappa));
    out.push_back(static_cast<std::uint8_t>(base));
    out.push_back(static_cast<std::uint8_t>(cfg.hash_id.size()));
    out.insert(out.end(), cfg.hash_id.begin(), cfg.hash_id.end());
    append_u64_le(out, cfg.seed);
    append_u64_le(out, sparse_count);
    return out;
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }

    std::uint64_t u64_le() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }

    std::string str(std::size_t len) {
        need(len);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), len);
        pos_ += len;
        return s;
    }

    std::vector<std::uint64_t> words(std::uint64_t count) {
        std::vector<std::uint64_t> out;
        out.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i)
            out.push_back(u64_le());
        return out;
    }

    bool exhausted() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) {
        if (bytes_.size() - pos_ < n)
            throw FormatError("sketch envelope truncated");
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

PackedArray packed_from_words(std::uint64_t length, unsigned width,
                              std::vector<std::uint64_t> words) {
    PackedArray a(length, width);
    try {
        a.assign_words(std::move(words));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("sketch payload not canonical: ") + e.what());
    }
    return a;
}

}  // namespace

SketchKind kind_of(const AnySketch& s) {
    if (std::holds_alternative<HllSketch>(s))
        return SketchKind::Hll;
    switch (std::get<HlllSketch>(s).variant()) {
        case HlllVariant::Exact: return SketchKind::HlllExact;
        case HlllVariant::Star: return SketchKind::HlllStar;
        case HlllVariant::BaseMin: return SketchKind::HlllBaseMin;
    }
    throw std::logic_error("kind_of: unknown variant");
}

HlllVariant variant_of(SketchKind kind) {
    switch (kind) {
        case SketchKind::HlllExact: return HlllVariant::Exact;
        case SketchKind::HlllStar: return HlllVariant::Star;
        case SketchKind::HlllBaseMin: return HlllVariant::BaseMin;
        case SketchKind::Hll: break;
    }
    throw std::invalid_argument("variant_of: kind is not a compressed sketch");
}

std::vector<std::uint8_t> serialize(const HllSketch& s) {
    auto out = header(SketchKind::Hll, s.log2m(), 0, 0, s.hash_config(), 0);
    const auto& regs = s.register_array();
    append_words(out, regs.words(), regs.words().size());
    return out;
}

std::vector<std::uint8_t> serialize(const HlllSketch& s) {
    auto out = header(kind_of(AnySketch{s}), s.log2m(), s.kappa(), s.base(),
                      s.hash_config(), s.sparse_count());
    const auto& dense = s.dense_array();
    append_words(out, dense.words(), dense.words().size());
    append_words(out, s.sparse_map().words(), s.sparse_map().used_word_count());
    return out;
}

std::vector<std::uint8_t> serialize(const AnySketch& s) {
    return std::visit([](const auto& sk) { return serialize(sk); }, s);
}

AnySketch deserialize(std::span<const std::uint8_t> bytes) {
    Reader rd(bytes);
    for (std::uint8_t expect : kMagic)
        if (rd.u8() != expect)
            throw FormatError("bad magic");
    if (rd.u8() != kVersion)
        throw FormatError("unsupported version");
    const std::uint8_t kind_byte = rd.u8();
    if (kind_byte > 3)
        throw FormatError("unknown sketch kind");
    const auto kind = static_cast<SketchKind>(kind_byte);
    const unsigned log2m = rd.u8();
    const unsigned kappa = rd.u8();
    const unsigned base = rd.u8();
    if (log2m < HllSketch::kMinLog2m || log2m > HllSketch::kMaxLog2m)
        throw FormatError("log2m out of range");
    const std::uint64_t m = std::uint64_t{1} << log2m;

    HashConfig cfg;
    const std::size_t id_len = rd.u8();
    cfg.hash_id = rd.str(id_len);
    cfg.seed = rd.u64_le();
    const std::uint64_t sparse_count = rd.u64_le();

    if (kind == SketchKind::Hll) {
        if (kappa != 0 || base != 0)
            throw FormatError("HLL sketch with nonzero kappa or base");
        if (sparse_count != 0)
            throw FormatError("HLL sketch with sparse entries");
        auto words = rd.words(PackedArray::word_count(m, HllSketch::kRegisterBits));
        if (!rd.exhausted())
            throw FormatError("trailing bytes after payload");
        auto regs = packed_from_words(m, HllSketch::kRegisterBits, std::move(words));
        return HllSketch::from_parts(log2m, std::move(cfg), std::move(regs));
    }

    if (kappa < 1 || kappa > 6)
        throw FormatError("kappa out of range");
    if (base > 63)
        throw FormatError("base out of range");
    if (sparse_count > m)
        throw FormatError("sparse count exceeds register count");

    const unsigned entry_width = log2m + 6;
    auto dense_words = rd.words(PackedArray::word_count(m, kappa));
    auto sparse_words = rd.words(PackedArray::word_count(sparse_count, entry_width));
    if (!rd.exhausted())
        throw FormatError("trailing bytes after payload");

    auto dense = packed_from_words(m, kappa, std::move(dense_words));
    auto packed_entries = packed_from_words(sparse_count, entry_width, std::move(sparse_words));

    SparseRegisterMap sparse(log2m);
    const unsigned win_lo = base;
    const unsigned win_hi = base + (1u << kappa);
    std::uint64_t prev_key = 0;
    for (std::uint64_t i = 0; i < sparse_count; ++i) {
        const std::uint64_t entry = packed_entries.get(i);
        const std::uint64_t key = entry >> 6;
        const unsigned value = static_cast<unsigned>(entry & 63u);
        if (key >= m)
            throw FormatError("sparse key out of range");
        if (i > 0 && key <= prev_key)
            throw FormatError("sparse entries not sorted strictly ascending");
        if (value >= win_lo && value < win_hi)
            throw FormatError("sparse value inside the dense window");
        if (dense.get(key) != 0)
            throw FormatError("dense slot of sparse register not zero");
        sparse.append(key, value);
        prev_key = key;
    }

    return HlllSketch::from_parts(log2m, variant_of(kind), kappa, std::move(cfg), base,
                                  std::move(dense), std::move(sparse));
}

void save_file(const std::filesystem::path& path, const AnySketch& s) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    const auto bytes = serialize(s);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

AnySketch load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace hlll
