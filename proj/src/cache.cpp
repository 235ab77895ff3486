#include "qdt/cache.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace qdt {

std::string cacheKey(const std::string& canonicalQuiver, const std::string& op,
                     const std::string& args) {
    // 64-bit FNV-1a over the '\x1f'-separated fields, rendered as hex.
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        h ^= 0x1f;
        h *= 1099511628211ULL;
    };
    mix(canonicalQuiver);
    mix(op);
    mix(args);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string Cache::entryPath(const std::string& key) const {
    return dir_ + "/" + key + ".json";
}

std::optional<std::string> Cache::get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(entryPath(key));
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        auto doc = nlohmann::json::parse(buf.str());
        if (doc.at("key").get<std::string>() != key)
            throw std::runtime_error("key field does not match the entry name");
        return doc.at("payload").get<std::string>();
    } catch (const std::exception& e) {
        std::cerr << "warning: discarding corrupt cache entry " << key << ": " << e.what()
                  << "\n";
        return std::nullopt;
    }
}

void Cache::put(const std::string& key, const std::string& payload) const {
    if (!enabled()) return;
    namespace fs = std::filesystem;
    fs::create_directories(dir_);
    nlohmann::json doc;
    doc["key"] = key;
    doc["created"] = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    doc["payload"] = payload;
    const std::string final = entryPath(key);
    const std::string tmp = final + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << doc.dump();
        if (!out) {
            std::remove(tmp.c_str());
            throw std::runtime_error("cannot write cache entry " + final);
        }
    }
    fs::rename(tmp, final);
}

} // namespace qdt
