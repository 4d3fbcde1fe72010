#include "tsv.hpp"

#include "error.hpp"
#include "raster.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <vector>

namespace leakaudit {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

int parse_int(const std::string& s, const char* column) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorCode::Parse, std::string("column '") + column + "': '" + s + "' is not an integer");
    return v;
}

double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::Parse, "column 'corners': '" + s + "' is not a number");
}

}  // namespace

Manifest ingest_tsv(std::istream& in, const TsvIngestOptions& options) {
    if (options.dataset_id.empty()) throw Error(ErrorCode::InvalidArgument, "dataset id is empty");
    Manifest m;
    m.dataset_id = options.dataset_id;

    std::string line;
    std::size_t lineno = 0;
    std::map<std::string, std::size_t> col;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line, '\t');
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!col.emplace(cells[i], i).second)
                throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": repeated column '" + cells[i] + "'");
        break;
    }
    for (const char* required : {"id", "subset", "plate_text"})
        if (!col.count(required)) throw Error(ErrorCode::Parse, std::string("header lacks column '") + required + "'");
    for (const auto& [name, _] : col)
        if (name != "id" && name != "subset" && name != "plate_text" && name != "image_width" &&
            name != "image_height" && name != "corners")
            throw Error(ErrorCode::Parse, "unknown column '" + name + "'");
    const bool has_size = col.count("image_width") && col.count("image_height");
    if (col.count("image_width") != col.count("image_height"))
        throw Error(ErrorCode::Parse, "image_width and image_height must appear together");

    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        try {
            const auto cells = split(line, '\t');
            if (cells.size() != col.size())
                throw Error(ErrorCode::Parse, "expected " + std::to_string(col.size()) + " cells, found " +
                                                  std::to_string(cells.size()));
            ImageEntry e;
            e.id = cells[col["id"]];
            e.dataset_id = options.dataset_id;
            e.subset = cells[col["subset"]];
            e.plate_text = cells[col["plate_text"]];
            if (has_size) {
                e.image_width = parse_int(cells[col["image_width"]], "image_width");
                e.image_height = parse_int(cells[col["image_height"]], "image_height");
            } else if (options.image_size) {
                std::tie(e.image_width, e.image_height) = *options.image_size;
            } else if (options.image_root) {
                std::tie(e.image_width, e.image_height) = probe_image_size(*options.image_root / e.id);
            } else {
                throw Error(ErrorCode::InvalidArgument, "no image size column, fixed size or image root");
            }
            if (col.count("corners") && !cells[col["corners"]].empty()) {
                const auto nums = split(cells[col["corners"]], ',');
                if (nums.size() != 8)
                    throw Error(ErrorCode::Parse, "column 'corners' needs 8 numbers, found " + std::to_string(nums.size()));
                Quad q;
                for (int i = 0; i < 4; ++i) q[i] = {parse_double(nums[2 * i]), parse_double(nums[2 * i + 1])};
                e.corners = canonicalize_corners(q);
            }
            validate_entry(e, "id '" + e.id + "'");
            if (!seen.insert(e.id).second) throw Error(ErrorCode::Validation, "duplicate id '" + e.id + "'");
            m.entries.push_back(std::move(e));
        } catch (const Error& err) {
            throw Error(err.code(), where + ": " + err.what());
        }
    }
    if (col.empty()) throw Error(ErrorCode::Parse, "missing header row");
    return m;
}

Manifest ingest_tsv(const std::filesystem::path& path, const TsvIngestOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    try {
        return ingest_tsv(in, options);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

}  // namespace leakaudit
