#include "qdt/quiver.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdt {

Quiver::Quiver(std::vector<std::string> vertexNames, std::vector<std::pair<int, int>> arrows)
    : names_(std::move(vertexNames)), arrows_(std::move(arrows)) {
    if (names_.empty()) throw std::invalid_argument("quiver needs at least one vertex");
    for (size_t i = 0; i < names_.size(); ++i)
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw std::invalid_argument("duplicate vertex name");
    int n = numVertices();
    for (auto [s, t] : arrows_)
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw std::invalid_argument("arrow endpoint is not a declared vertex");
}

int Quiver::arrowCount(int i, int j) const {
    int c = 0;
    for (auto [s, t] : arrows_)
        if (s == i && t == j) ++c;
    return c;
}

int Quiver::vertexIndex(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown vertex name: " + name);
}

std::string Quiver::canonicalString() const {
    std::string s = "vertices[";
    for (size_t i = 0; i < names_.size(); ++i) {
        if (i) s += ",";
        s += names_[i];
    }
    s += "];arrows[";
    auto sorted = arrows_;
    std::sort(sorted.begin(), sorted.end());
    for (size_t a = 0; a < sorted.size(); ++a) {
        if (a) s += ",";
        s += std::to_string(sorted[a].first) + ">" + std::to_string(sorted[a].second);
    }
    return s + "]";
}

DoubleQuiver makeDouble(const Quiver& q) {
    auto arrows = q.arrows();
    int m = q.numArrows();
    for (int a = 0; a < m; ++a) arrows.emplace_back(q.target(a), q.source(a));
    return DoubleQuiver{Quiver(q.vertexNames(), std::move(arrows)), m};
}

TripleQuiver makeTriple(const Quiver& q) {
    DoubleQuiver d = makeDouble(q);
    auto arrows = d.quiver.arrows();
    int m = q.numArrows();
    for (int v = 0; v < q.numVertices(); ++v) arrows.emplace_back(v, v);
    Potential w;
    for (int a = 0; a < m; ++a) {
        int rev = m + a;
        int lt = 2 * m + q.target(a);
        int ls = 2 * m + q.source(a);
        w.push_back({+1, {a, rev, lt}});
        w.push_back({-1, {rev, a, ls}});
    }
    return TripleQuiver{Quiver(q.vertexNames(), std::move(arrows)), m, std::move(w)};
}

long eulerForm(const Quiver& q, const std::vector<int>& g1, const std::vector<int>& g2) {
    size_t n = static_cast<size_t>(q.numVertices());
    if (g1.size() != n || g2.size() != n)
        throw std::invalid_argument("dimension vector size mismatch");
    long s = 0;
    for (size_t i = 0; i < n; ++i) s += static_cast<long>(g1[i]) * g2[i];
    for (int a = 0; a < q.numArrows(); ++a)
        s -= static_cast<long>(g1[static_cast<size_t>(q.source(a))]) *
             g2[static_cast<size_t>(q.target(a))];
    return s;
}

long symEulerForm(const Quiver& q, const std::vector<int>& g1, const std::vector<int>& g2) {
    return eulerForm(q, g1, g2) + eulerForm(q, g2, g1);
}

std::vector<int> reflectClass(const Quiver& q, const std::vector<int>& g, int i) {
    if (i < 0 || i >= q.numVertices()) throw std::invalid_argument("vertex index out of range");
    if (!q.isRealVertex(i)) throw std::domain_error("non-reflectable vertex");
    std::vector<int> ei(static_cast<size_t>(q.numVertices()), 0);
    ei[static_cast<size_t>(i)] = 1;
    long pairing = symEulerForm(q, g, ei);
    std::vector<int> out = g;
    out[static_cast<size_t>(i)] -= static_cast<int>(pairing);
    return out;
}

std::string FourthRoot::str() const {
    switch (k_) {
        case 0: return "1";
        case 1: return "i";
        case 2: return "-1";
        default: return "-i";
    }
}

FourthRoot ksTwist(const std::vector<int>& g) {
    long s = 0;
    for (int x : g) s += static_cast<long>(x) * x;
    return FourthRoot::iPow(s);
}

Quiver makeA1() { return Quiver({"1"}, {}); }
Quiver makeA2() { return Quiver({"1", "2"}, {{0, 1}}); }
Quiver makeJordan() { return Quiver({"1"}, {{0, 0}}); }
Quiver makeKronecker() { return Quiver({"1", "2"}, {{0, 1}, {0, 1}}); }

Quiver makeLoops(int g) {
    if (g < 0) throw std::invalid_argument("negative loop count");
    std::vector<std::pair<int, int>> arrows(static_cast<size_t>(g), {0, 0});
    return Quiver({"1"}, std::move(arrows));
}

} // namespace qdt
