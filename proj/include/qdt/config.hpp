#pragma once
#include <optional>
#include <string>

#include "qdt/quiver.hpp"
#include "qdt/torus_series.hpp"

namespace qdt {

/**
 * A quiver description loaded from a plain key/value + arrays text document:
 *
 *   vertices = ["1", "2"]
 *   arrows   = [["1", "2"], ["2", "2"]]
 *   charge   = [["-1", "1"], ["1", "1"]]    # optional, [re, im] per vertex
 *
 * Loops are arrows with equal endpoints. Rationals accept "p/q" and "-n".
 * Any malformed input raises ConfigError.
 */
struct QuiverConfig {
    Quiver quiver;
    std::optional<CentralCharge> charge;
};

QuiverConfig parseQuiverConfig(const std::string& text);
QuiverConfig loadQuiverConfig(const std::string& path);

/** Strict "p" or "p/q" rational parser; anything else raises ConfigError. */
Rat parseRatText(const std::string& s);

} // namespace qdt
