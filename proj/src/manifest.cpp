#include "manifest.hpp"

#include "error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace leakaudit {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

bool in_bounds(double x, double y, const ImageEntry& e) {
    return x >= 0 && y >= 0 && x <= e.image_width && y <= e.image_height;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void validate_entry(const ImageEntry& e, const std::string& where) {
    const std::string at = where.empty() ? "entry '" + e.id + "'" : where;
    auto fail = [&](const std::string& msg) { throw Error(ErrorCode::Validation, at + ": " + msg); };

    if (e.id.empty()) fail("id is empty");
    if (e.dataset_id.empty()) fail("dataset_id is empty");
    if (trim(e.plate_text).empty()) fail("plate_text is empty");
    try {
        (void)e.key();
    } catch (const Error& err) {
        fail(err.what());
    }
    if (e.image_width <= 0 || e.image_height <= 0) fail("image dimensions must be positive");
    if (e.corners) {
        for (const Point& p : *e.corners)
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !in_bounds(p.x, p.y, e))
                fail("corner (" + std::to_string(p.x) + "," + std::to_string(p.y) + ") lies outside the image");
        if (!is_simple_quad(*e.corners)) fail("corners do not form a simple non-degenerate quadrilateral");
    }
    if (e.bbox) {
        const BBox& b = *e.bbox;
        if (!(b.x_min < b.x_max && b.y_min < b.y_max)) fail("bbox has non-positive extent");
        if (!in_bounds(b.x_min, b.y_min, e) || !in_bounds(b.x_max, b.y_max, e)) fail("bbox lies outside the image");
    }
}

namespace {

std::vector<double> numbers(const json& j, const char* field, std::size_t n) {
    if (!j.is_array() || j.size() != n)
        throw Error(ErrorCode::Parse, std::string("field '") + field + "' must be an array of " + std::to_string(n) +
                                          " numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw Error(ErrorCode::Parse, std::string("field '") + field + "' contains a non-number");
        out.push_back(v.get<double>());
    }
    return out;
}

std::string required_string(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string())
        throw Error(ErrorCode::Parse, std::string("missing or non-string field '") + field + "'");
    return it->get<std::string>();
}

int required_int(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_number_integer())
        throw Error(ErrorCode::Parse, std::string("missing or non-integer field '") + field + "'");
    return it->get<int>();
}

ImageEntry entry_from_json(const json& j) {
    static const std::set<std::string> known{"id",           "dataset_id",   "subset",  "plate_text",
                                             "image_width", "image_height", "corners", "bbox"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw Error(ErrorCode::Parse, "unknown field '" + k + "'");

    ImageEntry e;
    e.id = required_string(j, "id");
    e.dataset_id = required_string(j, "dataset_id");
    e.subset = required_string(j, "subset");
    e.plate_text = required_string(j, "plate_text");
    e.image_width = required_int(j, "image_width");
    e.image_height = required_int(j, "image_height");
    if (auto it = j.find("corners"); it != j.end() && !it->is_null()) {
        const auto v = numbers(*it, "corners", 8);
        Quad q;
        for (int i = 0; i < 4; ++i) q[i] = {v[2 * i], v[2 * i + 1]};
        e.corners = canonicalize_corners(q);
    }
    if (auto it = j.find("bbox"); it != j.end() && !it->is_null()) {
        const auto v = numbers(*it, "bbox", 4);
        e.bbox = BBox{v[0], v[1], v[2], v[3]};
    }
    return e;
}

void parse_header(const json& h, Manifest& m) {
    if (!h.is_object()) throw Error(ErrorCode::Parse, "'manifest' header must be an object");
    if (auto it = h.find("dataset_id"); it != h.end()) m.dataset_id = it->get<std::string>();
    if (auto it = h.find("charmaps"); it != h.end()) m.charmaps = it->get<Charmaps>();
}

}  // namespace

Manifest parse_manifest(std::istream& in) {
    Manifest m;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    bool any_record = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::Parse, where + ": malformed JSON (" + e.what() + ")");
        }
        if (!j.is_object()) throw Error(ErrorCode::Parse, where + ": record is not an object");
        try {
            if (j.contains("manifest")) {
                if (any_record) throw Error(ErrorCode::Parse, "manifest header must precede all records");
                parse_header(j.at("manifest"), m);
                any_record = true;
                continue;
            }
            any_record = true;
            ImageEntry e = entry_from_json(j);
            validate_entry(e, where + " (id '" + e.id + "')");
            if (m.dataset_id.empty()) m.dataset_id = e.dataset_id;
            if (e.dataset_id != m.dataset_id)
                throw Error(ErrorCode::Validation, "dataset_id '" + e.dataset_id + "' differs from manifest dataset '" +
                                                       m.dataset_id + "'");
            if (!seen.insert(e.id).second) throw Error(ErrorCode::Validation, "duplicate id '" + e.id + "'");
            m.entries.push_back(std::move(e));
        } catch (const Error& err) {
            const std::string msg = err.what();
            throw Error(err.code(), msg.rfind("line ", 0) == 0 ? msg : where + ": " + msg);
        } catch (const json::exception& err) {
            throw Error(ErrorCode::Parse, where + ": " + err.what());
        }
    }
    return m;
}

Manifest parse_manifest(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_manifest(in);
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open manifest '" + path.string() + "'");
    try {
        return parse_manifest(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

std::string serialize_entry(const ImageEntry& e) {
    ordered_json j;
    j["id"] = e.id;
    j["dataset_id"] = e.dataset_id;
    j["subset"] = e.subset;
    j["plate_text"] = e.plate_text;
    j["image_width"] = e.image_width;
    j["image_height"] = e.image_height;
    if (e.corners) {
        auto arr = ordered_json::array();
        for (const Point& p : *e.corners) {
            arr.push_back(p.x);
            arr.push_back(p.y);
        }
        j["corners"] = arr;
    }
    if (e.bbox) j["bbox"] = {e.bbox->x_min, e.bbox->y_min, e.bbox->x_max, e.bbox->y_max};
    return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

std::string serialize_manifest(const Manifest& m) {
    std::string out;
    if (!m.charmaps.empty() || (m.entries.empty() && !m.dataset_id.empty())) {
        ordered_json h;
        h["manifest"]["dataset_id"] = m.dataset_id;
        if (!m.charmaps.empty()) h["manifest"]["charmaps"] = m.charmaps;
        out += h.dump() + "\n";
    }
    for (const auto& e : m.entries) out += serialize_entry(e) + "\n";
    return out;
}

}  // namespace leakaudit
