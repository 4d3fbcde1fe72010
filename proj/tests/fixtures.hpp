#pragma once

#include "assignment.hpp"
#include "dedup.hpp"
#include "manifest.hpp"
#include "rng.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

inline leakaudit::ImageEntry entry(const std::string& id, const std::string& plate, const std::string& subset = "S",
                                   const std::string& dataset = "ds") {
    leakaudit::ImageEntry e;
    e.id = id;
    e.dataset_id = dataset;
    e.subset = subset;
    e.plate_text = plate;
    e.image_width = 100;
    e.image_height = 50;
    return e;
}

inline leakaudit::Manifest manifest(std::vector<leakaudit::ImageEntry> entries, const std::string& dataset = "ds") {
    leakaudit::Manifest m;
    m.dataset_id = dataset;
    m.entries = std::move(entries);
    return m;
}

// Plate names P000, P001, ... so keys sort like their indices.
inline std::string plate_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "P%04zu", i);
    return buf;
}

// n images over at most n_plates plates, each image drawn to a random plate.
inline leakaudit::Manifest random_manifest(std::mt19937_64& gen, std::size_t n, std::size_t n_plates,
                                           const std::vector<std::string>& subsets = {"S"}) {
    std::vector<leakaudit::ImageEntry> es;
    std::uniform_int_distribution<std::size_t> plate(0, n_plates - 1), sub(0, subsets.size() - 1);
    for (std::size_t i = 0; i < n; ++i)
        es.push_back(entry("img" + std::to_string(i) + ".jpg", plate_name(plate(gen)), subsets[sub(gen)]));
    return manifest(std::move(es));
}

// AOLP-like manifest: images tagged AC, LE or RP, plates drawn from a shared pool.
inline leakaudit::Manifest aolp_manifest(std::mt19937_64& gen, std::size_t n_ac, std::size_t n_le, std::size_t n_rp,
                                         std::size_t n_plates) {
    std::vector<leakaudit::ImageEntry> es;
    std::uniform_int_distribution<std::size_t> plate(0, n_plates - 1);
    auto add = [&](const char* subset, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i)
            es.push_back(entry(std::string(subset) + "_" + std::to_string(i) + ".jpg", plate_name(plate(gen)), subset));
    };
    add("AC", n_ac);
    add("LE", n_le);
    add("RP", n_rp);
    return manifest(std::move(es));
}

// CCPD-like manifest. Non-donor images use plates Q*, donors use P*; `shared`
// donor images are given a plate also used by some non-donor image.
inline leakaudit::Manifest ccpd_manifest(std::mt19937_64& gen, std::size_t n_base, std::size_t n_green,
                                         std::size_t n_other, std::size_t shared) {
    std::vector<leakaudit::ImageEntry> es;
    const char* others[] = {"Blur", "Challenge", "DB", "FN", "Rotate", "Tilt", "Weather"};
    for (std::size_t i = 0; i < n_other; ++i)
        es.push_back(entry("o" + std::to_string(i) + ".jpg", "Q" + plate_name(i / 2), others[gen() % 7]));
    std::uniform_int_distribution<std::size_t> donor_plate(0, n_base + n_green);
    std::size_t made = 0;
    auto add = [&](const char* subset, std::size_t n, const std::string& prefix) {
        for (std::size_t i = 0; i < n; ++i, ++made) {
            const bool share = made < shared && n_other > 0;
            es.push_back(entry(prefix + std::to_string(i) + ".jpg",
                               share ? "Q" + plate_name((gen() % n_other) / 2) : plate_name(donor_plate(gen)), subset));
        }
    };
    add("Green", n_green, "g");
    add("Base", n_base, "b");
    std::shuffle(es.begin(), es.end(), gen);
    return manifest(std::move(es));
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() /
               ("leakaudit_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace fixtures
