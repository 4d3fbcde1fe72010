#include "report.hpp"

#include "error.hpp"
#include "version.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace leakaudit {

using json = nlohmann::json;

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json" || name == "structured") return ReportFormat::Json;
    if (name == "table") return ReportFormat::Table;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "' (expected json or table)");
}

std::string format_percent(std::size_t k, std::size_t n) {
    if (n == 0) return "n/a";
    const std::uint64_t tenths = (2000ULL * k + n) / (2ULL * n);
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

std::string format_fraction(std::size_t k, std::size_t n) {
    return std::to_string(k) + "/" + std::to_string(n) + " (" + format_percent(k, n) + ")";
}

namespace {

json to_json(const ScoredPair& p) { return {{"train_id", p.train_id}, {"test_id", p.test_id}, {"distance", p.distance}}; }

json to_json(const LeakageReport& r) {
    json hist = json::object();
    for (auto [size, images] : r.group_size_histogram) hist[std::to_string(size)] = images;
    json pairs = json::array();
    for (const auto& p : r.percentile_pairs) {
        json j = to_json(p.pair);
        j["percentile"] = p.percentile;
        pairs.push_back(j);
    }
    json meta{{"tool_version", r.metadata.tool_version},
              {"canonical_size", r.metadata.canonical_size},
              {"distance_basis", r.metadata.distance_basis},
              {"seed", r.metadata.seed ? json(*r.metadata.seed) : json(nullptr)}};
    return {{"split", r.split_name},
            {"n_train", r.n_train},
            {"n_val", r.n_val},
            {"n_test", r.n_test},
            {"n_test_leaked", r.n_test_leaked},
            {"leak_fraction", r.leak_fraction},
            {"n_val_with_test_duplicates", r.n_val_with_test_duplicates},
            {"group_size_histogram", hist},
            {"leaked_test_ids", r.leaked_test_ids},
            {"percentile_pairs", pairs},
            {"metadata", meta}};
}

LeakageReport report_from_json(const json& j) {
    LeakageReport r;
    r.split_name = j.at("split").get<std::string>();
    r.n_train = j.at("n_train").get<std::size_t>();
    r.n_val = j.at("n_val").get<std::size_t>();
    r.n_test = j.at("n_test").get<std::size_t>();
    r.n_test_leaked = j.at("n_test_leaked").get<std::size_t>();
    r.leak_fraction = j.at("leak_fraction").get<double>();
    r.n_val_with_test_duplicates = j.at("n_val_with_test_duplicates").get<std::size_t>();
    for (const auto& [k, v] : j.at("group_size_histogram").items())
        r.group_size_histogram[std::stoull(k)] = v.get<std::size_t>();
    r.leaked_test_ids = j.at("leaked_test_ids").get<std::vector<std::string>>();
    for (const auto& p : j.at("percentile_pairs"))
        r.percentile_pairs.push_back({p.at("percentile").get<double>(),
                                      {p.at("train_id").get<std::string>(), p.at("test_id").get<std::string>(),
                                       p.at("distance").get<double>()}});
    const auto& m = j.at("metadata");
    r.metadata.tool_version = m.at("tool_version").get<std::string>();
    r.metadata.canonical_size = m.at("canonical_size").get<std::string>();
    r.metadata.distance_basis = m.at("distance_basis").get<std::string>();
    if (!m.at("seed").is_null()) r.metadata.seed = m.at("seed").get<std::uint64_t>();
    return r;
}

json to_json(const OverlapSection& o) {
    json pairs = json::array();
    for (const auto& p : o.pairs)
        pairs.push_back({{"key", p.key},
                         {"id_a", p.id_a},
                         {"id_b", p.id_b},
                         {"distance", p.distance ? json(*p.distance) : json(nullptr)},
                         {"tier", std::string(to_string(p.tier))}});
    return {{"dataset_a", o.dataset_a},
            {"dataset_b", o.dataset_b},
            {"threshold", o.threshold ? json(*o.threshold) : json(nullptr)},
            {"pairs", pairs}};
}

OverlapSection overlap_from_json(const json& j) {
    OverlapSection o;
    o.dataset_a = j.at("dataset_a").get<std::string>();
    o.dataset_b = j.at("dataset_b").get<std::string>();
    if (!j.at("threshold").is_null()) o.threshold = j.at("threshold").get<double>();
    for (const auto& p : j.at("pairs")) {
        OverlapPair op;
        op.key = p.at("key").get<std::string>();
        op.id_a = p.at("id_a").get<std::string>();
        op.id_b = p.at("id_b").get<std::string>();
        if (!p.at("distance").is_null()) op.distance = p.at("distance").get<double>();
        const auto tier = p.at("tier").get<std::string>();
        if (tier != "likely" && tier != "candidate") throw Error(ErrorCode::Parse, "unknown overlap tier '" + tier + "'");
        op.tier = tier == "likely" ? OverlapTier::Likely : OverlapTier::Candidate;
        o.pairs.push_back(std::move(op));
    }
    return o;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string fixed(double v, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << v;
    return os.str();
}

std::string emit_table(const AuditDocument& doc) {
    std::ostringstream os;
    os << "leakage audit (tool " << doc.tool_version << ", generated " << doc.generated_at << ")\n";
    for (const auto& in : doc.inputs) os << "input " << in.path << " sha256:" << in.sha256 << "\n";
    if (doc.reports.empty() && !doc.overlap) os << "no reports\n";
    if (!doc.reports.empty()) {
        os << "\n"
           << pad("split", 20) << pad("test leaked", 24) << pad("train", 10) << pad("val", 10) << "val sharing test plates\n";
        for (const auto& r : doc.reports)
            os << pad(r.split_name, 20) << pad(format_fraction(r.n_test_leaked, r.n_test), 24)
               << pad(std::to_string(r.n_train), 10) << pad(std::to_string(r.n_val), 10) << r.n_val_with_test_duplicates
               << "\n";
        for (const auto& r : doc.reports) {
            if (r.percentile_pairs.empty()) continue;
            os << "\n" << r.split_name << " percentile pairs (pixel distance, " << r.metadata.distance_basis << " "
               << r.metadata.canonical_size << ")\n";
            for (const auto& p : r.percentile_pairs)
                os << "  p" << fixed(p.percentile, 0) << "  " << fixed(p.pair.distance, 2) << "  " << p.pair.train_id
                   << " <-> " << p.pair.test_id << "\n";
        }
    }
    if (doc.overlap) {
        const auto& o = *doc.overlap;
        std::size_t likely = 0;
        for (const auto& p : o.pairs) likely += p.tier == OverlapTier::Likely;
        os << "\ncross-dataset overlap " << o.dataset_a << " x " << o.dataset_b << ": " << o.pairs.size()
           << " pair(s), " << likely << " likely\n";
        for (const auto& p : o.pairs)
            os << "  " << pad(p.key, 12) << pad(std::string(to_string(p.tier)), 11)
               << pad(p.distance ? fixed(*p.distance, 2) : "-", 10) << p.id_a << " <-> " << p.id_b << "\n";
    }
    return os.str();
}

}  // namespace

std::string emit_audit(const AuditDocument& doc, ReportFormat format) {
    if (format == ReportFormat::Table) return emit_table(doc);
    json inputs = json::array();
    for (const auto& in : doc.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
    json reports = json::array();
    for (const auto& r : doc.reports) reports.push_back(to_json(r));
    json j{{"tool_version", doc.tool_version},
           {"generated_at", doc.generated_at},
           {"inputs", inputs},
           {"reports", reports},
           {"overlap", doc.overlap ? to_json(*doc.overlap) : json(nullptr)}};
    return j.dump(2) + "\n";
}

AuditDocument parse_audit_document(std::string_view text) {
    try {
        const json j = json::parse(text);
        AuditDocument doc;
        doc.tool_version = j.at("tool_version").get<std::string>();
        doc.generated_at = j.at("generated_at").get<std::string>();
        for (const auto& in : j.at("inputs"))
            doc.inputs.push_back({in.at("path").get<std::string>(), in.at("sha256").get<std::string>()});
        for (const auto& r : j.at("reports")) doc.reports.push_back(report_from_json(r));
        if (!j.at("overlap").is_null()) doc.overlap = overlap_from_json(j.at("overlap"));
        return doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("audit document: ") + e.what());
    }
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::Io, "sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
}

namespace {

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw Error(ErrorCode::Io, "cannot create directory '" + dir.string() + "'");
}

json spec_to_json(const SplitSpec& spec) {
    json targets = json::object();
    for (const auto& [role, n] : spec.targets) targets[std::string(to_string(role))] = n;
    return {{"val_fraction", spec.val_fraction},
            {"targets", targets},
            {"donor_subsets", spec.donor_subsets},
            {"val_targets", spec.val_targets},
            {"lenient_donors", spec.lenient_donors}};
}

}  // namespace

std::vector<std::filesystem::path> emit_split_files(const SplitAssignment& a, const SplitSpec& spec,
                                                    const std::filesystem::path& dir) {
    ensure_dir(dir);
    std::vector<std::filesystem::path> written;
    auto write_list = [&](Role role, const char* name) {
        std::string body;
        for (const auto& id : a.ids_with(role)) body += id + "\n";
        write_file_atomic(dir / name, body);
        written.push_back(dir / name);
    };
    write_list(Role::Train, "train.txt");
    write_list(Role::Val, "val.txt");
    write_list(Role::Test, "test.txt");
    const RoleCounts c = a.counts();
    if (c.excluded) {
        write_list(Role::Excluded, "excluded.txt");
    } else {
        std::error_code ec;
        std::filesystem::remove(dir / "excluded.txt", ec);
    }
    json meta{{"protocol", a.protocol},
              {"seed", a.seed ? json(*a.seed) : json(nullptr)},
              {"counts", {{"train", c.train}, {"val", c.val}, {"test", c.test}, {"excluded", c.excluded}}},
              {"tool_version", kToolVersion},
              {"val_mode", a.val_mode},
              {"warnings", a.warnings},
              {"spec", spec_to_json(spec)}};
    write_file_atomic(dir / "split_meta.json", meta.dump(2) + "\n");
    written.push_back(dir / "split_meta.json");
    return written;
}

LoadedSplit load_split_files(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::Io, "split directory '" + dir.string() + "' not found");
    LoadedSplit out;
    std::set<std::string> dup;
    for (Role role : {Role::Train, Role::Val, Role::Test, Role::Excluded}) {
        const auto path = dir / (std::string(to_string(role)) + ".txt");
        std::ifstream in(path);
        if (!in) {
            if (role == Role::Excluded) continue;
            throw Error(ErrorCode::Io, "cannot open split file '" + path.string() + "'");
        }
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            if (!out.assignment.roles.emplace(line, role).second) dup.insert(line);
        }
    }
    out.multiply_assigned.assign(dup.begin(), dup.end());

    const auto meta_path = dir / "split_meta.json";
    if (std::filesystem::exists(meta_path)) {
        std::ifstream in(meta_path);
        try {
            const json meta = json::parse(in);
            out.assignment.protocol = meta.at("protocol").get<std::string>();
            if (!meta.at("seed").is_null()) out.assignment.seed = meta.at("seed").get<std::uint64_t>();
            out.assignment.val_mode = meta.value("val_mode", std::string{});
            out.assignment.warnings = meta.value("warnings", std::vector<std::string>{});
            SplitSpec spec;
            spec.protocol = parse_protocol(out.assignment.protocol);
            spec.seed = out.assignment.seed;
            if (meta.contains("spec")) {
                const auto& s = meta["spec"];
                spec.val_fraction = s.value("val_fraction", 0.2);
                for (const auto& [role, n] : s.value("targets", json::object()).items())
                    spec.targets[parse_role(role)] = n.get<std::size_t>();
                spec.donor_subsets = s.value("donor_subsets", spec.donor_subsets);
                spec.val_targets = s.value("val_targets", spec.val_targets);
                spec.lenient_donors = s.value("lenient_donors", spec.lenient_donors);
            }
            out.spec = spec;
        } catch (const json::exception& e) {
            throw Error(ErrorCode::Parse, meta_path.string() + ": " + e.what());
        }
    }
    return out;
}

namespace {

std::string html_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string ordinal(double p) {
    const long v = std::lround(p);
    const long mod100 = v % 100, mod10 = v % 10;
    const char* suffix = (mod100 >= 11 && mod100 <= 13) ? "th" : mod10 == 1 ? "st" : mod10 == 2 ? "nd" : mod10 == 3 ? "rd" : "th";
    return std::to_string(v) + suffix;
}

}  // namespace

std::filesystem::path emit_gallery(std::vector<GalleryEntry> entries, const std::filesystem::path& dir) {
    for (const auto& e : entries)
        if (!e.train_plate || !e.test_plate)
            throw Error(ErrorCode::Validation, "gallery pair (" + e.pair.pair.train_id + ", " + e.pair.pair.test_id +
                                                   ") has no rectified raster");
    ensure_dir(dir);
    std::stable_sort(entries.begin(), entries.end(),
                     [](const GalleryEntry& a, const GalleryEntry& b) { return a.pair.percentile < b.pair.percentile; });

    std::ostringstream html;
    html << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Near-duplicate pairs</title>\n"
         << "<style>body{font-family:sans-serif}.pair{margin:1em 0;padding:.5em;border:1px solid #ccc}"
         << ".pair img{image-rendering:pixelated;width:288px;margin-right:1em}</style>\n</head>\n<body>\n"
         << "<h1>Near-duplicate pairs by pixel distance</h1>\n";
    if (entries.empty()) html << "<p class=\"empty\">No duplicates found.</p>\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const std::string train_png = "pair" + std::to_string(i) + "_train.png";
        const std::string test_png = "pair" + std::to_string(i) + "_test.png";
        save_image(*e.train_plate, dir / train_png);
        save_image(*e.test_plate, dir / test_png);
        html << "<div class=\"pair\">\n<h2>" << ordinal(e.pair.percentile) << " percentile &mdash; distance "
             << fixed(e.pair.pair.distance, 2) << "</h2>\n"
             << "<figure><img src=\"" << train_png << "\" alt=\"train\"><img src=\"" << test_png
             << "\" alt=\"test\">\n<figcaption>train: " << html_escape(e.pair.pair.train_id)
             << " &nbsp; test: " << html_escape(e.pair.pair.test_id) << "</figcaption></figure>\n</div>\n";
    }
    html << "</body>\n</html>\n";
    const auto index = dir / "index.html";
    write_file_atomic(index, html.str());
    return index;
}

}  // namespace leakaudit
