#pragma once

// Published (orig, fair, gap, rel_gap) rows for the AOLP protocols A and B.
struct ReportedRow {
    double orig, fair, gap, rel_gap;
};

inline constexpr ReportedRow kAolpRows[] = {
    {98.88, 95.63, 3.25, 290.2}, {96.75, 93.11, 3.64, 112.0}, {97.33, 93.79, 3.54, 132.6},
    {98.69, 95.83, 2.86, 218.3}, {99.18, 96.94, 2.24, 273.2}, {98.74, 96.94, 1.80, 142.9},
    {98.91, 96.80, 2.11, 193.6}, {98.42, 96.30, 2.12, 134.2}, {98.42, 95.29, 3.13, 198.1},
    {98.47, 96.46, 2.01, 131.4}, {98.75, 97.47, 1.28, 102.4}, {98.75, 97.31, 1.44, 115.2},
};

inline constexpr ReportedRow kCcpdRows[] = {
    {88.24, 86.93, 1.31, 11.1}, {77.01, 75.41, 1.60, 7.0}, {83.01, 81.84, 1.17, 6.9},
    {78.53, 73.33, 5.20, 24.2}, {75.83, 71.48, 4.35, 18.0}, {79.06, 76.37, 2.69, 12.9},
};
