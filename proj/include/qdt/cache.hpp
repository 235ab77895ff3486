#pragma once
#include <optional>
#include <string>

namespace qdt {

/** Stable content address: canonical quiver form + operation name + arguments. */
std::string cacheKey(const std::string& canonicalQuiver, const std::string& op,
                     const std::string& args);

/**
 * Directory-backed store for JSON payloads of pure computations. Writes are
 * atomic (temp file, then rename), so concurrent writers of the same key
 * leave a single consistent entry. A corrupt or unreadable entry reads as a
 * miss with a warning on stderr; callers recompute and overwrite it. An
 * empty directory string disables the store.
 */
class Cache {
public:
    explicit Cache(std::string dir) : dir_(std::move(dir)) {}

    bool enabled() const { return !dir_.empty(); }
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& payload) const;

private:
    std::string entryPath(const std::string& key) const;
    std::string dir_;
};

} // namespace qdt
