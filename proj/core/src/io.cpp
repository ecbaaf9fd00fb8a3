#include "grmq/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");

namespace grmq::io {

namespace {

constexpr char kArrayMagic[5] = {'G', 'R', 'M', 'Q', '1'};
constexpr char kQueryMagic[5] = {'G', 'R', 'M', 'Q', 'Q'};

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return in;
}

template <typename T>
void write_raw(std::ostream& out, const T* data, std::size_t count) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
}

template <typename T>
void read_raw(std::istream& in, T* data, std::size_t count, const char* what) {
    in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
    if (!in) throw IoError(std::string("truncated file while reading ") + what);
}

void write_u64(std::ostream& out, std::uint64_t v) { write_raw(out, &v, 1); }

std::uint64_t read_u64(std::istream& in, const char* what) {
    std::uint64_t v = 0;
    read_raw(in, &v, 1, what);
    return v;
}

void write_positions(std::ostream& out, std::span<const Position> positions, unsigned width) {
    if (width == 8) {
        write_raw(out, positions.data(), positions.size());
        return;
    }
    for (Position p : positions) {
        const std::uint32_t narrow = static_cast<std::uint32_t>(p);
        write_raw(out, &narrow, 1);
    }
}

std::vector<Position> read_positions(std::istream& in, std::uint64_t count, unsigned width,
                                     const char* what) {
    std::vector<Position> positions(count);
    if (width == 8) {
        read_raw(in, positions.data(), count, what);
        return positions;
    }
    std::vector<std::uint32_t> narrow(count);
    read_raw(in, narrow.data(), count, what);
    for (std::uint64_t i = 0; i < count; ++i) positions[i] = narrow[i];
    return positions;
}

unsigned read_header(std::istream& in, const char expected_magic[5], const char* what) {
    char magic[5];
    read_raw(in, magic, 5, what);
    if (std::memcmp(magic, expected_magic, 5) != 0)
        throw IoError(std::string("bad magic in ") + what);
    std::uint8_t width = 0;
    read_raw(in, &width, 1, what);
    if (width != 4 && width != 8)
        throw IoError(std::string("bad position width in ") + what);
    return width;
}

std::vector<float> read_array_body(std::istream& in) {
    read_header(in, kArrayMagic, "array file");
    const std::uint64_t n = read_u64(in, "array file");
    if (n < 1) throw IoError("array file: n must be >= 1");
    std::vector<float> values(n);
    read_raw(in, values.data(), n, "array file");
    return values;
}

void write_array_body(std::ostream& out, std::span<const float> values) {
    write_raw(out, kArrayMagic, 5);
    const std::uint8_t width = static_cast<std::uint8_t>(position_width_bytes(values.size()));
    write_raw(out, &width, 1);
    write_u64(out, values.size());
    write_raw(out, values.data(), values.size());
}

}  // namespace

void write_array_file(const std::filesystem::path& path, std::span<const float> values) {
    auto out = open_out(path);
    write_array_body(out, values);
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<float> read_array_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_array_body(in);
}

void write_query_file(const std::filesystem::path& path, const QueryBatch& batch,
                      std::uint64_t n) {
    auto out = open_out(path);
    write_raw(out, kQueryMagic, 5);
    const std::uint8_t width = static_cast<std::uint8_t>(position_width_bytes(n));
    write_raw(out, &width, 1);
    write_u64(out, batch.size());
    for (const Query& q : batch.queries) {
        const Position pair[2] = {q.l, q.r};
        write_positions(out, pair, width);
    }
    if (!out) throw IoError("write failed: " + path.string());
}

QueryBatch read_query_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    const unsigned width = read_header(in, kQueryMagic, "query file");
    const std::uint64_t m = read_u64(in, "query file");
    if (m < 1) throw IoError("query file: m must be >= 1");
    QueryBatch batch;
    batch.queries.reserve(m);
    for (std::uint64_t j = 0; j < m; ++j) {
        auto pair = read_positions(in, 2, width, "query file");
        batch.queries.push_back({pair[0], pair[1]});
    }
    return batch;
}

void write_hierarchy_file(const std::filesystem::path& path, const MinHierarchy& h) {
    auto out = open_out(path);
    write_array_body(out, h.base());
    const auto& sizes = h.layout().level_sizes;
    write_u64(out, sizes.size());
    for (std::uint64_t s : sizes) write_u64(out, s);
    write_raw(out, h.upper_mins().data(), h.upper_mins().size());
    if (h.tracks_index())
        write_positions(out, h.upper_argmins(), position_width_bytes(h.n()));
    if (!out) throw IoError("write failed: " + path.string());
}

MinHierarchy read_hierarchy_file(const std::filesystem::path& path,
                                 std::optional<HierarchyConfig> config) {
    auto in = open_in(path);
    std::vector<float> base = read_array_body(in);

    LevelLayout layout;
    const std::uint64_t num_aux = read_u64(in, "hierarchy file");
    std::uint64_t offset = 0;
    for (std::uint64_t i = 0; i < num_aux; ++i) {
        const std::uint64_t size = read_u64(in, "hierarchy file");
        layout.level_sizes.push_back(size);
        layout.level_offsets.push_back(offset);
        offset += size;
    }

    std::vector<float> mins(offset);
    read_raw(in, mins.data(), offset, "hierarchy file");

    // argmin presence follows from the remaining length
    const unsigned width = position_width_bytes(base.size());
    std::vector<Position> argmins;
    in.peek();
    if (!in.eof()) argmins = read_positions(in, offset, width, "hierarchy file");

    HierarchyConfig cfg = config.value_or(HierarchyConfig::defaults_for(base.size()));
    if (offset != 0) cfg.track_index = !argmins.empty();
    cfg.validate_structure();

    std::uint64_t prev = base.size();
    for (std::uint64_t size : layout.level_sizes) {
        if (size != (prev + cfg.chunk_size - 1) / cfg.chunk_size)
            throw IoError("hierarchy file: level sizes inconsistent with chunk size " +
                          std::to_string(cfg.chunk_size));
        prev = size;
    }
    return MinHierarchy::from_parts(std::move(base), std::move(layout), std::move(mins),
                                    std::move(argmins), cfg);
}

void write_results_csv(const std::filesystem::path& path, const QueryBatch& batch,
                       std::span<const ResultRecord> results, bool track_index) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "query_id,l,r,value,index\n";
    char buf[64];
    for (std::uint64_t j = 0; j < results.size(); ++j) {
        const Query& q = batch.queries[j];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), results[j].value);
        out << j << ',' << q.l << ',' << q.r << ',' << std::string_view(buf, end) << ',';
        if (track_index) out << results[j].index;
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

std::string mismatch_report_json(std::span<const Mismatch> mismatches) {
    nlohmann::json report;
    report["mismatch_count"] = mismatches.size();
    report["mismatches"] = nlohmann::json::array();
    for (const Mismatch& mm : mismatches) {
        report["mismatches"].push_back({
            {"query_id", mm.query_id},
            {"l", mm.query.l},
            {"r", mm.query.r},
            {"expected", {{"value", mm.expected.value}, {"index", mm.expected.index}}},
            {"actual", {{"value", mm.actual.value}, {"index", mm.actual.index}}},
        });
    }
    return report.dump(2);
}

}  // namespace grmq::io
