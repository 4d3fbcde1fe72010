#pragma once

#include "geometry.hpp"
#include "raster.hpp"
#include "rng.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace leakaudit::synth {

/// One symbol set per plate position. Symbols are UTF-8 strings.
struct Pattern {
    std::vector<std::vector<std::string>> positions;
    std::size_t size() const noexcept { return positions.size(); }
};

using ClassTable = std::map<std::string, std::vector<std::string>>;

/// Built-in classes: L = A..Z without I and O, D = 0..9, A = L + D,
/// P = the 31 mainland province abbreviations.
const ClassTable& builtin_classes();

/// Pattern syntax: "{NAME}" a named class, "[XYZ]" an explicit set, "\c" a
/// literal c, any other character a literal. Named classes come from `classes`
/// first, then the built-ins. Throws Error(InvalidArgument) on bad syntax or
/// an unknown or empty class.
Pattern parse_pattern(std::string_view spec, const ClassTable& classes = {});

/// Default pattern strings: "mainland", "mainland_green", "taiwan".
std::string_view default_pattern(std::string_view name);

/// One uniform draw per position.
std::string sample_plate_text(const Pattern& pattern, Rng& rng);

/// True when every character of `text` lies in its position's class.
bool conforms(const Pattern& pattern, std::string_view text);

struct GlyphMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> coverage;  // 0 = background, 255 = full ink
};

struct Box {
    int x = 0, y = 0, width = 0, height = 0;
};

struct PlateTemplate {
    Raster base;
    std::vector<Box> boxes;
    Pattern pattern;
    std::map<std::string, GlyphMask> atlas;
    std::array<std::uint8_t, 3> ink{0, 0, 0};
};

/// Throws Error(Validation) when boxes and pattern disagree, a box leaves the
/// raster, or a producible symbol has no glyph.
void validate_template(const PlateTemplate& tpl);

/// Composites each glyph, scaled to fit and centred, into its box.
/// Pixels outside the boxes keep the template background.
Raster render_plate(const PlateTemplate& tpl, std::string_view text);

struct TransformConfig {
    double perspective_radius = 0;  // corner jitter, fraction of plate width/height
    double noise_sigma = 0;         // intensity units
    double shadow_probability = 0;
    double shadow_opacity_min = 0;
    double shadow_opacity_max = 0;
    double hue_jitter = 0;         // degrees
    double saturation_jitter = 0;  // relative
    double brightness_jitter = 0;  // relative
    std::uint64_t seed = 0;
};

/// Throws Error(InvalidArgument) on negative ranges or bad probabilities.
void validate(const TransformConfig& config);

struct PerspectiveSample {
    Quad from;  // the full frame
    Quad to;    // jittered corners
    Homography to_from_from;
};

/// Jitters each frame corner by at most radius*width horizontally and
/// radius*height vertically.
PerspectiveSample sample_perspective(int width, int height, double radius, Rng& rng);

/// perspective -> shadow -> HSV jitter -> noise, each driven by `rng`.
/// Output has the input's dimensions.
Raster apply_transforms(const Raster& input, const TransformConfig& config, Rng& rng);
/// Seeds a fresh generator from config.seed.
Raster apply_transforms(const Raster& input, const TransformConfig& config);

struct SynthConfig {
    std::filesystem::path template_path;
    std::filesystem::path atlas_path;
    std::string pattern;  // pattern string or a default pattern name
    ClassTable classes;
    std::vector<Box> boxes;
    std::array<std::uint8_t, 3> ink{0, 0, 0};
    TransformConfig transforms;
    std::size_t count = 0;
    std::uint64_t master_seed = 0;
    std::filesystem::path output_dir;
};

/// JSON config; relative asset paths resolve against the config's directory.
SynthConfig load_synth_config(const std::filesystem::path& path);

/// Atlas JSON: {"glyphs": {"A": "A.png", ...}}; coverage = 255 - luma.
std::map<std::string, GlyphMask> load_atlas(const std::filesystem::path& path);

PlateTemplate load_template(const SynthConfig& config);

struct SynthItem {
    std::string text;
    Raster raster;
};

/// Item `index` of a batch, seeded by derive_seed(master_seed, index) so
/// items are independent of generation order.
SynthItem generate_item(const PlateTemplate& tpl, const TransformConfig& transforms, std::uint64_t master_seed,
                        std::size_t index);

/// Writes `count` PNGs named <index>_<text>.png; returns their paths.
std::vector<std::filesystem::path> run_synthesis(const SynthConfig& config);

}  // namespace leakaudit::synth
