#include "xijensen/gamma_table.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

namespace xij {

namespace {
constexpr const char* kHeader = "# xijensen gamma cache v1";
}

GammaTable::GammaTable(const GammaTable& o) {
    std::shared_lock lk(o.mu_);
    entries_ = o.entries_;
}

GammaTable& GammaTable::operator=(const GammaTable& o) {
    if (this == &o)
        return *this;
    std::map<long, GammaEntry> copy;
    {
        std::shared_lock lk(o.mu_);
        copy = o.entries_;
    }
    std::unique_lock lk(mu_);
    entries_ = std::move(copy);
    return *this;
}

bool GammaTable::has(long M) const {
    std::shared_lock lk(mu_);
    return entries_.count(M) != 0;
}

std::optional<GammaEntry> GammaTable::get(long M) const {
    std::shared_lock lk(mu_);
    auto it = entries_.find(M);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

Real GammaTable::value(long M) const {
    std::shared_lock lk(mu_);
    auto it = entries_.find(M);
    if (it == entries_.end())
        throw MissingCoefficient("gamma(" + std::to_string(M) +
                                 ") not in table");
    return it->second.value;
}

void GammaTable::put(long M, GammaEntry e) {
    std::unique_lock lk(mu_);
    entries_.insert_or_assign(M, std::move(e));
}

std::vector<long> GammaTable::indices() const {
    std::shared_lock lk(mu_);
    std::vector<long> out;
    out.reserve(entries_.size());
    for (const auto& [m, _] : entries_)
        out.push_back(m);
    return out;
}

size_t GammaTable::size() const {
    std::shared_lock lk(mu_);
    return entries_.size();
}

long GammaTable::max_contiguous() const {
    std::shared_lock lk(mu_);
    long r = -1;
    for (const auto& [m, _] : entries_) {
        if (m != r + 1)
            break;
        r = m;
    }
    return r;
}

void GammaTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write cache file: " + path);
    out << kHeader << "\n";
    std::shared_lock lk(mu_);
    for (const auto& [m, e] : entries_) {
        out << m << ' ' << e.value.midpoint_decimal() << ' '
            << e.value.radius_decimal() << ' ' << e.bits_used << ' '
            << (e.prov == Provenance::Direct ? 'D' : 'I') << "\n";
    }
    if (!out)
        throw Error("write failure on cache file: " + path);
}

GammaTable GammaTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot read cache file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw Error("bad cache header in " + path);
    GammaTable t;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ss(line);
        long m = 0, bits = 0;
        std::string mid, rad;
        char prov = 'I';
        if (!(ss >> m >> mid >> rad >> bits >> prov))
            throw Error("bad cache record: " + line);
        GammaEntry e;
        e.value = Real::parse(mid, rad, bits);
        e.bits_used = bits;
        e.prov = prov == 'D' ? Provenance::Direct : Provenance::Integral;
        t.put(m, std::move(e));
    }
    return t;
}

GammaTable::Audit GammaTable::audit() const {
    std::shared_lock lk(mu_);
    Audit a;
    auto fail = [&a](const std::string& what) {
        ++a.failures;
        if (a.first_failure.empty())
            a.first_failure = what;
    };
    for (const auto& [m, e] : entries_) {
        if (e.value.sign_certified() == 1)
            ++a.positivity_certified;
        else
            fail("positivity uncertified at M=" + std::to_string(m));
    }
    for (const auto& [m, e] : entries_) {
        auto g1 = entries_.find(m - 1);
        auto g2 = entries_.find(m - 2);
        if (g1 != entries_.end() && g2 != entries_.end()) {
            Real lhs = mul(g1->second.value, g1->second.value);
            Real rhs = mul(g2->second.value, e.value);
            if (sub(lhs, rhs).sign_certified() == 1)
                ++a.log_concavity_certified;
            else
                fail("log-concavity uncertified at M=" + std::to_string(m));
        }
        if (g1 != entries_.end() && m >= 2) {
            if (certainly_less(e.value, g1->second.value))
                ++a.decay_certified;
            else
                fail("decay uncertified at M=" + std::to_string(m));
        }
    }
    return a;
}

} // namespace xij
