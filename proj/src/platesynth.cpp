#include "platesynth.hpp"

#include "error.hpp"
#include "plate.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace leakaudit::synth {

const ClassTable& builtin_classes() {
    static const ClassTable table = [] {
        ClassTable t;
        for (char c = 'A'; c <= 'Z'; ++c)
            if (c != 'I' && c != 'O') t["L"].push_back(std::string(1, c));
        for (char c = '0'; c <= '9'; ++c) t["D"].push_back(std::string(1, c));
        t["A"] = t["L"];
        t["A"].insert(t["A"].end(), t["D"].begin(), t["D"].end());
        t["P"] = {"皖", "沪", "津", "渝", "冀", "晋", "蒙", "辽", "吉", "黑", "苏", "浙", "京", "闽", "赣", "鲁",
                  "豫", "鄂", "湘", "粤", "桂", "琼", "川", "贵", "云", "藏", "陕", "甘", "青", "宁", "新"};
        return t;
    }();
    return table;
}

std::string_view default_pattern(std::string_view name) {
    if (name == "mainland") return "{P}{L}{A}{A}{A}{A}{A}";
    if (name == "mainland_green") return "{P}{L}[DF]{A}{D}{D}{D}{D}";
    if (name == "taiwan") return "{L}{L}{L}{D}{D}{D}{D}";
    return {};
}

Pattern parse_pattern(std::string_view spec, const ClassTable& classes) {
    const auto cps = utf8::decode(spec);
    Pattern p;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorCode::InvalidArgument, "pattern '" + std::string(spec) + "': " + msg);
    };
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t c = cps[i];
        if (c == U'{') {
            std::size_t j = i + 1;
            while (j < cps.size() && cps[j] != U'}') ++j;
            if (j >= cps.size()) fail("unterminated '{'");
            const std::string name = utf8::encode(std::vector<char32_t>(cps.begin() + i + 1, cps.begin() + j));
            const std::vector<std::string>* cls = nullptr;
            if (auto it = classes.find(name); it != classes.end()) cls = &it->second;
            else if (auto bt = builtin_classes().find(name); bt != builtin_classes().end()) cls = &bt->second;
            if (!cls) fail("unknown class '" + name + "'");
            if (cls->empty()) fail("class '" + name + "' is empty (position " + std::to_string(p.size()) + ")");
            p.positions.push_back(*cls);
            i = j;
        } else if (c == U'[') {
            std::size_t j = i + 1;
            std::vector<std::string> set;
            while (j < cps.size() && cps[j] != U']') {
                if (cps[j] == U'\\' && j + 1 < cps.size()) ++j;
                set.push_back(utf8::encode(cps[j]));
                ++j;
            }
            if (j >= cps.size()) fail("unterminated '['");
            if (set.empty()) fail("empty set at position " + std::to_string(p.size()));
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
            p.positions.push_back(std::move(set));
            i = j;
        } else if (c == U'\\') {
            if (i + 1 >= cps.size()) fail("dangling escape");
            p.positions.push_back({utf8::encode(cps[++i])});
        } else {
            p.positions.push_back({utf8::encode(c)});
        }
    }
    return p;
}

std::string sample_plate_text(const Pattern& pattern, Rng& rng) {
    std::string out;
    for (std::size_t i = 0; i < pattern.positions.size(); ++i) {
        const auto& cls = pattern.positions[i];
        if (cls.empty()) throw Error(ErrorCode::InvalidArgument, "empty class at position " + std::to_string(i));
        out += cls[rng.below(cls.size())];
    }
    return out;
}

bool conforms(const Pattern& pattern, std::string_view text) {
    std::vector<char32_t> cps;
    try {
        cps = utf8::decode(text);
    } catch (const Error&) {
        return false;
    }
    if (cps.size() != pattern.size()) return false;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const auto& cls = pattern.positions[i];
        if (std::find(cls.begin(), cls.end(), utf8::encode(cps[i])) == cls.end()) return false;
    }
    return true;
}

void validate_template(const PlateTemplate& tpl) {
    if (tpl.base.empty()) throw Error(ErrorCode::Validation, "template raster is empty");
    if (tpl.boxes.size() != tpl.pattern.size())
        throw Error(ErrorCode::Validation, "template has " + std::to_string(tpl.boxes.size()) + " boxes but the pattern has " +
                                               std::to_string(tpl.pattern.size()) + " positions");
    for (std::size_t i = 0; i < tpl.boxes.size(); ++i) {
        const Box& b = tpl.boxes[i];
        if (b.width <= 0 || b.height <= 0 || b.x < 0 || b.y < 0 || b.x + b.width > tpl.base.width ||
            b.y + b.height > tpl.base.height)
            throw Error(ErrorCode::Validation, "box " + std::to_string(i) + " lies outside the template raster");
    }
    for (const auto& cls : tpl.pattern.positions)
        for (const auto& sym : cls)
            if (!tpl.atlas.count(sym)) throw Error(ErrorCode::Validation, "glyph '" + sym + "' is missing from the atlas");
}

namespace {

double sample_mask(const GlyphMask& g, double x, double y) {
    const double cx = std::clamp(x, 0.0, static_cast<double>(g.width - 1));
    const double cy = std::clamp(y, 0.0, static_cast<double>(g.height - 1));
    const int x0 = static_cast<int>(std::floor(cx)), y0 = static_cast<int>(std::floor(cy));
    const int x1 = std::min(x0 + 1, g.width - 1), y1 = std::min(y0 + 1, g.height - 1);
    const double fx = cx - x0, fy = cy - y0;
    auto at = [&](int xx, int yy) { return static_cast<double>(g.coverage[static_cast<std::size_t>(yy) * g.width + xx]); };
    return (at(x0, y0) * (1 - fx) + at(x1, y0) * fx) * (1 - fy) + (at(x0, y1) * (1 - fx) + at(x1, y1) * fx) * fy;
}

}  // namespace

Raster render_plate(const PlateTemplate& tpl, std::string_view text) {
    const auto cps = utf8::decode(text);
    if (cps.size() != tpl.pattern.size() || cps.size() != tpl.boxes.size())
        throw Error(ErrorCode::Validation, "text '" + std::string(text) + "' has " + std::to_string(cps.size()) +
                                               " characters, template expects " + std::to_string(tpl.boxes.size()));
    if (!conforms(tpl.pattern, text))
        throw Error(ErrorCode::Validation, "text '" + std::string(text) + "' does not match the template pattern");

    Raster out = tpl.base;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const std::string sym = utf8::encode(cps[i]);
        auto it = tpl.atlas.find(sym);
        if (it == tpl.atlas.end()) throw Error(ErrorCode::Validation, "glyph '" + sym + "' is missing from the atlas");
        const GlyphMask& g = it->second;
        if (g.width <= 0 || g.height <= 0) continue;
        const Box& box = tpl.boxes[i];
        const double scale = std::min(static_cast<double>(box.width) / g.width, static_cast<double>(box.height) / g.height);
        const int w = std::clamp(static_cast<int>(std::lround(g.width * scale)), 1, box.width);
        const int h = std::clamp(static_cast<int>(std::lround(g.height * scale)), 1, box.height);
        const int ox = box.x + (box.width - w) / 2;
        const int oy = box.y + (box.height - h) / 2;
        const double sx = static_cast<double>(g.width) / w, sy = static_cast<double>(g.height) / h;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const double alpha = sample_mask(g, (x + 0.5) * sx - 0.5, (y + 0.5) * sy - 0.5) / 255.0;
                if (alpha <= 0.0) continue;
                for (int c = 0; c < 3; ++c) {
                    auto& px = out.at(ox + x, oy + y, c);
                    px = clamp_to_u8(px * (1.0 - alpha) + tpl.ink[c] * alpha);
                }
            }
        }
    }
    return out;
}

void validate(const TransformConfig& c) {
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a non-negative number");
    };
    nonneg(c.perspective_radius, "perspective_radius");
    nonneg(c.noise_sigma, "noise_sigma");
    nonneg(c.shadow_opacity_min, "shadow_opacity_min");
    nonneg(c.shadow_opacity_max, "shadow_opacity_max");
    nonneg(c.hue_jitter, "hue_jitter");
    nonneg(c.saturation_jitter, "saturation_jitter");
    nonneg(c.brightness_jitter, "brightness_jitter");
    if (!(c.shadow_probability >= 0.0 && c.shadow_probability <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "shadow_probability must lie in [0, 1]");
    if (c.shadow_opacity_min > c.shadow_opacity_max || c.shadow_opacity_max > 1.0)
        throw Error(ErrorCode::InvalidArgument, "shadow opacity range must satisfy 0 <= min <= max <= 1");
    if (c.perspective_radius >= 0.5) throw Error(ErrorCode::InvalidArgument, "perspective_radius must be below 0.5");
}

PerspectiveSample sample_perspective(int width, int height, double radius, Rng& rng) {
    const double w = width, h = height;
    const Quad frame{Point{0, 0}, Point{w, 0}, Point{w, h}, Point{0, h}};
    for (int attempt = 0; attempt < 16; ++attempt) {
        Quad to = frame;
        for (Point& p : to) {
            p.x += rng.uniform(-radius * w, radius * w);
            p.y += rng.uniform(-radius * h, radius * h);
        }
        try {
            return {frame, to, solve_homography(frame, to)};
        } catch (const Error&) {
            // degenerate draw; try again
        }
    }
    return {frame, frame, Homography()};
}

namespace {

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
    const double mx = std::max({r, g, b}), mn = std::min({r, g, b});
    const double d = mx - mn;
    v = mx;
    s = mx > 0 ? d / mx : 0;
    if (d == 0) {
        h = 0;
    } else if (mx == r) {
        h = 60.0 * std::fmod((g - b) / d, 6.0);
    } else if (mx == g) {
        h = 60.0 * ((b - r) / d + 2.0);
    } else {
        h = 60.0 * ((r - g) / d + 4.0);
    }
    if (h < 0) h += 360.0;
}

void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
    const double c = v * s;
    const double hp = std::fmod(h, 360.0) / 60.0;
    const double x = c * (1 - std::abs(std::fmod(hp, 2.0) - 1));
    double r1 = 0, g1 = 0, b1 = 0;
    if (hp < 1) r1 = c, g1 = x;
    else if (hp < 2) r1 = x, g1 = c;
    else if (hp < 3) g1 = c, b1 = x;
    else if (hp < 4) g1 = x, b1 = c;
    else if (hp < 5) r1 = x, b1 = c;
    else r1 = c, b1 = x;
    const double m = v - c;
    r = r1 + m, g = g1 + m, b = b1 + m;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;  // counter-clockwise in (x, y)
}

bool inside_convex(const std::vector<Point>& hull, const Point& p) {
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (cross(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
    return true;
}

}  // namespace

Raster apply_transforms(const Raster& input, const TransformConfig& config, Rng& rng) {
    validate(config);
    Raster img = input;
    if (img.empty()) return img;

    if (config.perspective_radius > 0) {
        const auto sample = sample_perspective(img.width, img.height, config.perspective_radius, rng);
        img = warp_same_frame(img, sample.to_from_from);
    }

    if (rng.bernoulli(config.shadow_probability)) {
        const int k = 3 + static_cast<int>(rng.below(4));
        std::vector<Point> pts;
        for (int i = 0; i < k; ++i) pts.push_back({rng.uniform(0, img.width), rng.uniform(0, img.height)});
        const double factor = 1.0 - rng.uniform(config.shadow_opacity_min, config.shadow_opacity_max);
        const auto hull = convex_hull(pts);
        if (hull.size() >= 3 && factor != 1.0) {
            for (int y = 0; y < img.height; ++y)
                for (int x = 0; x < img.width; ++x)
                    if (inside_convex(hull, {x + 0.5, y + 0.5}))
                        for (int c = 0; c < 3; ++c) img.at(x, y, c) = clamp_to_u8(img.at(x, y, c) * factor);
        }
    }

    const double dh = rng.uniform(-config.hue_jitter, config.hue_jitter);
    const double ds = 1.0 + rng.uniform(-config.saturation_jitter, config.saturation_jitter);
    const double dv = 1.0 + rng.uniform(-config.brightness_jitter, config.brightness_jitter);
    if (dh != 0.0 || ds != 1.0 || dv != 1.0) {
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                double h, s, v, r, g, b;
                rgb_to_hsv(img.at(x, y, 0) / 255.0, img.at(x, y, 1) / 255.0, img.at(x, y, 2) / 255.0, h, s, v);
                h = std::fmod(h + dh + 360.0, 360.0);
                s = std::clamp(s * ds, 0.0, 1.0);
                v = std::clamp(v * dv, 0.0, 1.0);
                hsv_to_rgb(h, s, v, r, g, b);
                img.at(x, y, 0) = clamp_to_u8(r * 255.0);
                img.at(x, y, 1) = clamp_to_u8(g * 255.0);
                img.at(x, y, 2) = clamp_to_u8(b * 255.0);
            }
        }
    }

    if (config.noise_sigma > 0)
        for (auto& px : img.pixels) px = clamp_to_u8(px + config.noise_sigma * rng.normal());
    return img;
}

Raster apply_transforms(const Raster& input, const TransformConfig& config) {
    Rng rng(config.seed);
    return apply_transforms(input, config, rng);
}

namespace {

using json = nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
    }
}

}  // namespace

std::map<std::string, GlyphMask> load_atlas(const std::filesystem::path& path) {
    const json j = read_json(path);
    if (!j.contains("glyphs") || !j["glyphs"].is_object())
        throw Error(ErrorCode::Parse, path.string() + ": atlas needs a 'glyphs' object");
    std::map<std::string, GlyphMask> atlas;
    for (const auto& [sym, file] : j["glyphs"].items()) {
        const Raster r = load_image(resolve(path.parent_path(), file.get<std::string>()));
        GlyphMask g{r.width, r.height, std::vector<std::uint8_t>(static_cast<std::size_t>(r.width) * r.height)};
        for (int y = 0; y < r.height; ++y)
            for (int x = 0; x < r.width; ++x) {
                const double luma = 0.299 * r.at(x, y, 0) + 0.587 * r.at(x, y, 1) + 0.114 * r.at(x, y, 2);
                g.coverage[static_cast<std::size_t>(y) * r.width + x] = clamp_to_u8(255.0 - luma);
            }
        atlas.emplace(sym, std::move(g));
    }
    return atlas;
}

SynthConfig load_synth_config(const std::filesystem::path& path) {
    const json j = read_json(path);
    const auto base = path.parent_path();
    SynthConfig c;
    try {
        c.template_path = resolve(base, j.at("template").get<std::string>());
        c.atlas_path = resolve(base, j.at("atlas").get<std::string>());
        c.pattern = j.at("pattern").get<std::string>();
        if (j.contains("classes")) c.classes = j["classes"].get<ClassTable>();
        for (const auto& b : j.at("boxes")) c.boxes.push_back({b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(), b.at(3).get<int>()});
        if (j.contains("ink")) c.ink = j["ink"].get<std::array<std::uint8_t, 3>>();
        if (j.contains("transforms")) {
            const auto& t = j["transforms"];
            c.transforms.perspective_radius = t.value("perspective_radius", 0.0);
            c.transforms.noise_sigma = t.value("noise_sigma", 0.0);
            c.transforms.shadow_probability = t.value("shadow_probability", 0.0);
            if (t.contains("shadow_opacity")) {
                c.transforms.shadow_opacity_min = t["shadow_opacity"].at(0).get<double>();
                c.transforms.shadow_opacity_max = t["shadow_opacity"].at(1).get<double>();
            }
            c.transforms.hue_jitter = t.value("hue_jitter", 0.0);
            c.transforms.saturation_jitter = t.value("saturation_jitter", 0.0);
            c.transforms.brightness_jitter = t.value("brightness_jitter", 0.0);
        }
        c.count = j.at("count").get<std::size_t>();
        c.master_seed = j.value("seed", std::uint64_t{0});
        c.output_dir = resolve(base, j.value("output_dir", std::string("synth_out")));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
    }
    validate(c.transforms);
    return c;
}

PlateTemplate load_template(const SynthConfig& config) {
    PlateTemplate tpl;
    tpl.base = load_image(config.template_path);
    tpl.boxes = config.boxes;
    const std::string_view named = default_pattern(config.pattern);
    tpl.pattern = parse_pattern(named.empty() ? std::string_view(config.pattern) : named, config.classes);
    tpl.atlas = load_atlas(config.atlas_path);
    tpl.ink = config.ink;
    validate_template(tpl);
    return tpl;
}

SynthItem generate_item(const PlateTemplate& tpl, const TransformConfig& transforms, std::uint64_t master_seed,
                        std::size_t index) {
    Rng rng(derive_seed(master_seed, index));
    SynthItem item;
    item.text = sample_plate_text(tpl.pattern, rng);
    item.raster = apply_transforms(render_plate(tpl, item.text), transforms, rng);
    return item;
}

std::vector<std::filesystem::path> run_synthesis(const SynthConfig& config) {
    const PlateTemplate tpl = load_template(config);
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create '" + config.output_dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> written;
    for (std::size_t i = 0; i < config.count; ++i) {
        const SynthItem item = generate_item(tpl, config.transforms, config.master_seed, i);
        char prefix[32];
        std::snprintf(prefix, sizeof prefix, "%06zu_", i);
        const auto path = config.output_dir / std::filesystem::u8path(prefix + item.text + ".png");
        save_image(item.raster, path);
        written.push_back(path);
    }
    return written;
}

}  // namespace leakaudit::synth
