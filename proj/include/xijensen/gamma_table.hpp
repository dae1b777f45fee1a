#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "xijensen/real.hpp"

namespace xij {

enum class Provenance { Integral, Direct };

struct GammaEntry {
    Real value;
    long bits_used = 0;
    Provenance prov = Provenance::Integral;
};

// Persisted cache M -> gamma(M).  Concurrent reads, serialized writes.
class GammaTable {
  public:
    GammaTable() = default;
    GammaTable(const GammaTable& o);
    GammaTable& operator=(const GammaTable& o);

    bool has(long M) const;
    std::optional<GammaEntry> get(long M) const;
    // Throws MissingCoefficient when absent.
    Real value(long M) const;
    void put(long M, GammaEntry e);

    std::vector<long> indices() const;
    size_t size() const;
    // Largest R such that every M in [0, R] is present; -1 when 0 absent.
    long max_contiguous() const;

    void save(const std::string& path) const;
    static GammaTable load(const std::string& path);

    struct Audit {
        long positivity_certified = 0;
        long log_concavity_certified = 0;
        long decay_certified = 0;
        long failures = 0;
        std::string first_failure;
        bool pass() const { return failures == 0; }
    };
    // Certifies positivity of every entry, log-concavity
    // gamma(M-1)^2 >= gamma(M-2) gamma(M), and decay gamma(M+1) < gamma(M)
    // wherever the needed neighbors are present.
    Audit audit() const;

  private:
    mutable std::shared_mutex mu_;
    std::map<long, GammaEntry> entries_;
};

} // namespace xij
