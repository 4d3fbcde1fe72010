#include "ccpd.hpp"

#include "error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace leakaudit {

namespace {

std::vector<std::string_view> split(std::string_view s, char delim) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(delim, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void field_error(const char* field, const std::string& msg) {
    throw Error(ErrorCode::Parse, std::string("CCPD field '") + field + "': " + msg);
}

int to_int(std::string_view tok, const char* field) {
    int v = 0;
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        field_error(field, "non-numeric token '" + std::string(tok) + "'");
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) field_error(field, "token '" + std::string(tok) + "' out of range");
    return v;
}

Point to_point(std::string_view tok, const char* field) {
    const auto parts = split(tok, '&');
    if (parts.size() != 2) field_error(field, "point '" + std::string(tok) + "' is not of the form x&y");
    return {double(to_int(parts[0], field)), double(to_int(parts[1], field))};
}

const std::vector<std::string>& table(const Charmaps& charmaps, const char* name) {
    auto it = charmaps.find(name);
    if (it == charmaps.end() || it->second.empty())
        throw Error(ErrorCode::InvalidArgument, std::string("charmap table '") + name + "' is missing or empty");
    return it->second;
}

const std::vector<std::string>& table_for_position(const Charmaps& charmaps, std::size_t pos) {
    return table(charmaps, pos == 0 ? kProvinceTable : pos == 1 ? kLetterTable : kAlnumTable);
}

}  // namespace

Charmaps parse_charmaps(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("charmaps: ") + e.what());
    }
    Charmaps out;
    for (const char* name : {kProvinceTable, kLetterTable, kAlnumTable}) {
        auto it = j.find(name);
        if (it == j.end() || !it->is_array() || it->empty())
            throw Error(ErrorCode::Parse, std::string("charmaps: table '") + name + "' is missing or empty");
        try {
            out[name] = it->get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception&) {
            throw Error(ErrorCode::Parse, std::string("charmaps: table '") + name + "' must hold strings");
        }
    }
    return out;
}

Charmaps load_charmaps(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open charmaps '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_charmaps(ss.str());
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

CcpdRecord parse_ccpd_filename(std::string_view name, const Charmaps& charmaps) {
    if (const auto dot = name.rfind('.'); dot != std::string_view::npos) name = name.substr(0, dot);
    const auto fields = split(name, '-');
    if (fields.size() != 7)
        throw Error(ErrorCode::Parse, "CCPD filename '" + std::string(name) + "' has " + std::to_string(fields.size()) +
                                          " fields, expected 7");
    CcpdRecord r;
    r.area_ratio = to_int(fields[0], "area") / 1000.0;

    const auto tilt = split(fields[1], '_');
    if (tilt.size() != 2) field_error("tilt", "expected 2 angles");
    r.tilt = {double(to_int(tilt[0], "tilt")), double(to_int(tilt[1], "tilt"))};

    const auto bbox = split(fields[2], '_');
    if (bbox.size() != 2) field_error("bbox", "expected 2 points");
    r.bbox = {to_point(bbox[0], "bbox"), to_point(bbox[1], "bbox")};

    const auto verts = split(fields[3], '_');
    if (verts.size() != 4) field_error("vertices", "expected 4 points");
    for (int i = 0; i < 4; ++i) r.vertices[i] = to_point(verts[i], "vertices");

    const auto idx = split(fields[4], '_');
    if (idx.size() != 7 && idx.size() != 8)
        field_error("char_indices", "expected 7 or 8 indices, got " + std::to_string(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const int v = to_int(idx[i], "char_indices");
        const auto& t = table_for_position(charmaps, i);
        if (static_cast<std::size_t>(v) >= t.size())
            field_error("char_indices", "index " + std::to_string(v) + " at position " + std::to_string(i) +
                                            " exceeds charmap size " + std::to_string(t.size()));
        r.char_indices.push_back(v);
    }
    r.brightness = to_int(fields[5], "brightness");
    r.blurriness = to_int(fields[6], "blurriness");
    return r;
}

std::string decode_plate_text(const std::vector<int>& indices, const Charmaps& charmaps) {
    if (indices.empty()) throw Error(ErrorCode::Validation, "plate index list is empty");
    if (indices.size() != 7 && indices.size() != 8)
        throw Error(ErrorCode::Validation,
                    "plate index list has length " + std::to_string(indices.size()) + ", expected 7 or 8");
    std::string text;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto& t = table_for_position(charmaps, i);
        if (indices[i] < 0 || static_cast<std::size_t>(indices[i]) >= t.size())
            throw Error(ErrorCode::Validation, "plate index " + std::to_string(indices[i]) + " at position " +
                                                   std::to_string(i) + " is out of range");
        text += t[indices[i]];
    }
    return text;
}

PlateKey decode_plate_indices(const std::vector<int>& indices, const Charmaps& charmaps) {
    return normalize_plate(decode_plate_text(indices, charmaps));
}

Quad canonical_vertices(const CcpdRecord& record) {
    const auto& v = record.vertices;  // stored as BR, BL, TL, TR
    return canonicalize_corners(Quad{v[2], v[3], v[0], v[1]});
}

std::string ccpd_subset_from_path(const std::filesystem::path& relative) {
    std::vector<std::string> dirs;
    for (const auto& part : relative.parent_path()) dirs.push_back(part.string());
    for (auto it = dirs.rbegin(); it != dirs.rend(); ++it) {
        std::string d = *it;
        std::transform(d.begin(), d.end(), d.begin(), [](unsigned char c) { return std::tolower(c); });
        if (d.rfind("ccpd_", 0) != 0) continue;
        std::string name = it->substr(5);
        if (name.empty()) break;
        name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
        if (d == "ccpd_fn") name = "FN";
        if (d == "ccpd_db") name = "DB";
        if (it != dirs.rbegin()) {
            std::string split_dir = *(it - 1);
            std::transform(split_dir.begin(), split_dir.end(), split_dir.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (split_dir == "test") name += "-test";
        }
        return name;
    }
    return "unknown";
}

Manifest ingest_ccpd(const std::filesystem::path& root, const std::vector<std::filesystem::path>& relative_paths,
                     const Charmaps& charmaps, const CcpdIngestOptions& options) {
    Manifest m;
    m.dataset_id = options.dataset_id;
    m.charmaps = charmaps;
    std::set<std::string> seen;
    for (const auto& rel : relative_paths) {
        const std::string id = rel.generic_string();
        CcpdRecord rec;
        try {
            rec = parse_ccpd_filename(rel.filename().string(), charmaps);
        } catch (const Error& e) {
            throw Error(e.code(), "'" + id + "': " + e.what());
        }
        ImageEntry e;
        e.id = id;
        e.dataset_id = options.dataset_id;
        e.subset = options.subset ? *options.subset : ccpd_subset_from_path(rel);
        if (rec.char_indices.size() == 8 && e.subset.rfind("Green", 0) != 0)
            throw Error(ErrorCode::Validation,
                        "'" + id + "': eight-character plate outside a Green subset (subset '" + e.subset + "')");
        e.plate_text = decode_plate_text(rec.char_indices, charmaps);
        if (options.image_size) {
            std::tie(e.image_width, e.image_height) = *options.image_size;
        } else {
            std::tie(e.image_width, e.image_height) = probe_image_size(root / rel);
        }
        e.corners = canonical_vertices(rec);
        e.bbox = BBox{rec.bbox[0].x, rec.bbox[0].y, rec.bbox[1].x, rec.bbox[1].y};
        validate_entry(e, "'" + id + "'");
        if (!seen.insert(id).second) throw Error(ErrorCode::Validation, "duplicate id '" + id + "'");
        m.entries.push_back(std::move(e));
    }
    return m;
}

}  // namespace leakaudit
