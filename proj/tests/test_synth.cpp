#include "error.hpp"
#include "fixtures.hpp"
#include "plate.hpp"
#include "platesynth.hpp"

#include <doctest.h>

#include <fstream>
#include <iterator>
#include <random>
#include <set>

using namespace leakaudit;
using namespace leakaudit::synth;

namespace {

const std::filesystem::path kSynthData = std::filesystem::path(LEAKAUDIT_DATA_DIR) / "synth";

// Character sets written out independently of the library's tables.
const std::string kLetters = "ABCDEFGHJKLMNPQRSTUVWXYZ";
const std::string kDigits = "0123456789";
const std::set<std::string> kProvinces{"皖", "沪", "津", "渝", "冀", "晋", "蒙", "辽", "吉", "黑", "苏",
                                       "浙", "京", "闽", "赣", "鲁", "豫", "鄂", "湘", "粤", "桂", "琼",
                                       "川", "贵", "云", "藏", "陕", "甘", "青", "宁", "新"};

bool is_letter(const std::string& s) { return s.size() == 1 && kLetters.find(s[0]) != std::string::npos; }
bool is_digit(const std::string& s) { return s.size() == 1 && kDigits.find(s[0]) != std::string::npos; }

std::vector<std::string> symbols(const std::string& text) {
    std::vector<std::string> out;
    for (char32_t c : utf8::decode(text)) out.push_back(utf8::encode(c));
    return out;
}

Raster noise_raster(int w, int h, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Raster r(w, h);
    for (auto& p : r.pixels) p = static_cast<std::uint8_t>(gen());
    return r;
}

PlateTemplate block_template() {
    PlateTemplate tpl;
    tpl.base = Raster(40, 20, 200);
    tpl.boxes = {{2, 2, 16, 16}, {22, 2, 16, 16}};
    tpl.pattern = parse_pattern("[AB]{D}");
    GlyphMask solid{4, 4, std::vector<std::uint8_t>(16, 255)};
    GlyphMask empty{4, 4, std::vector<std::uint8_t>(16, 0)};
    tpl.atlas["A"] = solid;
    tpl.atlas["B"] = empty;
    for (char c : kDigits) tpl.atlas[std::string(1, c)] = solid;
    tpl.ink = {10, 20, 30};
    return tpl;
}

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("pattern syntax") {
    const auto lit = parse_pattern("AB");
    REQUIRE(lit.size() == 2);
    Rng rng(1);
    CHECK(sample_plate_text(lit, rng) == "AB");
    CHECK(conforms(lit, "AB"));
    CHECK(!conforms(lit, "AC"));
    CHECK(!conforms(lit, "ABC"));

    const auto mixed = parse_pattern("[XY\\]]\\{{D}-京");
    REQUIRE(mixed.size() == 5);
    CHECK(mixed.positions[0] == std::vector<std::string>{"X", "Y", "]"});
    CHECK(mixed.positions[1] == std::vector<std::string>{"{"});
    CHECK(mixed.positions[2].size() == 10);
    CHECK(mixed.positions[4] == std::vector<std::string>{"京"});
    CHECK(conforms(mixed, "]{7-京"));

    const ClassTable custom{{"V", {"甲", "乙"}}, {"E", {}}};
    CHECK(parse_pattern("{V}", custom).positions[0].size() == 2);
    for (const char* bad : {"{D", "[AB", "[]", "\\", "{Nope}"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_pattern(bad), Error);
    }
    CHECK_THROWS_AS(parse_pattern("{E}", custom), Error);
}

TEST_CASE("default patterns produce conforming text") {
    Rng rng(99);
    const auto mainland = parse_pattern(default_pattern("mainland"));
    const auto green = parse_pattern(default_pattern("mainland_green"));
    const auto taiwan = parse_pattern(default_pattern("taiwan"));
    CHECK(default_pattern("nope").empty());

    std::set<std::string> first_seen;
    for (int i = 0; i < 1000; ++i) {
        const auto m = symbols(sample_plate_text(mainland, rng));
        REQUIRE(m.size() == 7);
        CHECK(kProvinces.count(m[0]));
        first_seen.insert(m[0]);
        CHECK(is_letter(m[1]));
        for (int k = 2; k < 7; ++k) CHECK((is_letter(m[k]) || is_digit(m[k])));

        const auto g = symbols(sample_plate_text(green, rng));
        REQUIRE(g.size() == 8);
        CHECK(kProvinces.count(g[0]));
        CHECK(is_letter(g[1]));
        CHECK((g[2] == "D" || g[2] == "F"));
        CHECK((is_letter(g[3]) || is_digit(g[3])));
        for (int k = 4; k < 8; ++k) CHECK(is_digit(g[k]));

        const auto t = symbols(sample_plate_text(taiwan, rng));
        REQUIRE(t.size() == 7);
        for (int k = 0; k < 3; ++k) CHECK(is_letter(t[k]));
        for (int k = 3; k < 7; ++k) CHECK(is_digit(t[k]));
    }
    // uniform draws over 31 symbols reach nearly all of them in 1000 tries
    CHECK(first_seen.size() >= 29);
    CHECK(conforms(green, "京AD12345"));
    CHECK(!conforms(green, "京AD1234"));
    CHECK(!conforms(green, "京AE12345"));
    CHECK(!conforms(green, "京ADX1234X"));
}

TEST_CASE("rendering composites ink inside boxes only") {
    const auto tpl = block_template();
    validate_template(tpl);
    const Raster a = render_plate(tpl, "A5");
    const Raster b = render_plate(tpl, "B5");
    for (int y = 0; y < 20; ++y)
        for (int x = 0; x < 40; ++x) {
            const bool box0 = x >= 2 && x < 18 && y >= 2 && y < 18;
            const bool box1 = x >= 22 && x < 38 && y >= 2 && y < 18;
            if (!box0 && !box1) CHECK(a.at(x, y, 0) == 200);
            if (box0) {
                CHECK(a.at(x, y, 0) == 10);
                CHECK(a.at(x, y, 2) == 30);
                CHECK(b.at(x, y, 1) == 200);
            }
            if (box1) CHECK(a.at(x, y, 1) == 20);
        }
    CHECK_THROWS_AS(render_plate(tpl, "C5"), Error);
    CHECK_THROWS_AS(render_plate(tpl, "A"), Error);
}

TEST_CASE("template validation") {
    auto tpl = block_template();
    tpl.boxes.pop_back();
    CHECK_THROWS_AS(validate_template(tpl), Error);
    tpl = block_template();
    tpl.boxes[1].x = 30;
    CHECK_THROWS_AS(validate_template(tpl), Error);
    tpl = block_template();
    tpl.atlas.erase("7");
    try {
        validate_template(tpl);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("'7'") != std::string::npos);
    }
}

TEST_CASE("zero-magnitude transforms are a no-op") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Raster r = noise_raster(37, 19, seed);
        TransformConfig zero;
        zero.seed = seed;
        CHECK(apply_transforms(r, zero) == r);
    }
}

TEST_CASE("transforms are deterministic per seed") {
    const Raster r = noise_raster(60, 30, 5);
    TransformConfig cfg;
    cfg.perspective_radius = 0.1;
    cfg.noise_sigma = 5;
    cfg.shadow_probability = 0.5;
    cfg.shadow_opacity_min = 0.2;
    cfg.shadow_opacity_max = 0.6;
    cfg.hue_jitter = 10;
    cfg.saturation_jitter = 0.2;
    cfg.brightness_jitter = 0.2;
    cfg.seed = 77;
    const Raster a = apply_transforms(r, cfg);
    CHECK(apply_transforms(r, cfg) == a);
    CHECK(a.width == r.width);
    CHECK(a.height == r.height);
    cfg.seed = 78;
    CHECK(apply_transforms(r, cfg) != a);
}

TEST_CASE("noise only perturbs around the input") {
    Raster flat(50, 50, 128);
    TransformConfig cfg;
    cfg.noise_sigma = 3;
    cfg.seed = 4;
    const Raster out = apply_transforms(flat, cfg);
    double sum = 0;
    for (auto p : out.pixels) sum += p;
    CHECK(sum / out.pixels.size() == doctest::Approx(128).epsilon(0.01));
}

TEST_CASE("perspective corners stay within the radius") {
    Rng rng(8);
    for (int i = 0; i < 500; ++i) {
        const auto s = sample_perspective(100, 40, 0.1, rng);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(s.to[k].x - s.from[k].x) <= 10.0);
            CHECK(std::abs(s.to[k].y - s.from[k].y) <= 4.0);
            const Point p = s.to_from_from.apply(s.from[k]);
            CHECK(p.x == doctest::Approx(s.to[k].x));
            CHECK(p.y == doctest::Approx(s.to[k].y));
        }
    }
}

TEST_CASE("transform validation") {
    auto bad = [](auto mutate) {
        TransformConfig c;
        mutate(c);
        CHECK_THROWS_AS(validate(c), Error);
    };
    bad([](TransformConfig& c) { c.noise_sigma = -1; });
    bad([](TransformConfig& c) { c.shadow_probability = 1.5; });
    bad([](TransformConfig& c) { c.shadow_opacity_min = 0.6, c.shadow_opacity_max = 0.4; });
    bad([](TransformConfig& c) { c.shadow_opacity_max = 2; });
    bad([](TransformConfig& c) { c.perspective_radius = 0.5; });
    bad([](TransformConfig& c) { c.hue_jitter = NAN; });
    CHECK_NOTHROW(validate(TransformConfig{}));
}

TEST_CASE("items are independent of generation order") {
    const auto tpl = block_template();
    TransformConfig cfg;
    cfg.noise_sigma = 2;
    const auto later = generate_item(tpl, cfg, 5, 9);
    for (std::size_t i = 0; i < 9; ++i) (void)generate_item(tpl, cfg, 5, i);
    const auto again = generate_item(tpl, cfg, 5, 9);
    CHECK(later.text == again.text);
    CHECK(later.raster == again.raster);
}

TEST_CASE("synthesis from the bundled example config") {
    fixtures::TempDir a("synth_a"), b("synth_b");
    SynthConfig cfg = load_synth_config(kSynthData / "synth_config.json");
    CHECK(cfg.pattern == "taiwan");
    CHECK(cfg.boxes.size() == 7);
    cfg.count = 6;
    cfg.output_dir = a.path;
    const auto first = run_synthesis(cfg);
    cfg.output_dir = b.path;
    const auto second = run_synthesis(cfg);
    REQUIRE(first.size() == 6);
    REQUIRE(second.size() == 6);
    const auto taiwan = parse_pattern(default_pattern("taiwan"));
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].filename() == second[i].filename());
        CHECK(read_bytes(first[i]) == read_bytes(second[i]));
        const std::string name = first[i].stem().string();
        char prefix[16];
        std::snprintf(prefix, sizeof prefix, "%06zu_", i);
        CHECK(name.substr(0, 7) == prefix);
        CHECK(conforms(taiwan, name.substr(7)));
        const Raster img = load_image(first[i]);
        CHECK(img.width == 320);
        CHECK(img.height == 90);
    }

    cfg.transforms = TransformConfig{};
    cfg.output_dir = a.path / "plain";
    cfg.count = 1;
    const auto plain = run_synthesis(cfg);
    const PlateTemplate tpl = load_template(cfg);
    CHECK(load_image(plain[0]) == render_plate(tpl, plain[0].stem().string().substr(7)));
}

TEST_CASE("config errors") {
    fixtures::TempDir d("synth_cfg");
    std::ofstream(d.path / "bad.json") << "{\"template\": 3}";
    CHECK_THROWS_AS(load_synth_config(d.path / "bad.json"), Error);
    CHECK_THROWS_AS(load_synth_config(d.path / "missing.json"), Error);
    std::ofstream(d.path / "neg.json") << R"({"template": "t.png", "atlas": "a.json", "pattern": "AB",
        "boxes": [], "count": 1, "transforms": {"noise_sigma": -2}})";
    try {
        load_synth_config(d.path / "neg.json");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidArgument);
    }
}
