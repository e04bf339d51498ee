#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icnsim/rng.hpp"
#include "icnsim/types.hpp"

namespace icnsim {

/// Zipf-Mandelbrot pmf over 1-based ranks: f(k) = (k+q)^-alpha / H(n_p).
double zm_pmf(std::uint32_t k, double alpha, double q, std::uint32_t n_p);

/// Popularity sampler: inverse-CDF rank draws mapped to object ids through a
/// seeded Fisher-Yates permutation, so popularity never correlates with the
/// id order that interest sectors slice.
class ZmSampler {
public:
    ZmSampler(std::uint32_t n_p, double alpha, double q, std::uint64_t sample_seed,
              std::uint64_t permutation_seed);

    ObjectId sample();
    std::uint32_t sample_rank(); // 1-based
    ObjectId id_for_rank(std::uint32_t rank) const;
    std::uint32_t population() const { return n_p_; }
    double alpha() const { return alpha_; }
    double q() const { return q_; }

private:
    std::uint32_t n_p_;
    double alpha_, q_;
    std::vector<double> cdf_; // cdf_[k-1] = F(k), cdf_.back() == 1
    std::vector<ObjectId> rank_to_id_;
    Rng rng_;
};

struct RequestEvent {
    std::uint64_t seq = 0;
    RouterId source_router = 0;
    ObjectId object = 0;

    bool operator==(const RequestEvent&) const = default;
};

/// Lazily produced request stream: seeded uniform sources over the given
/// router set, objects from the sampler.
class WorkloadGenerator {
public:
    WorkloadGenerator(std::uint64_t n_requests, std::vector<RouterId> sources, ZmSampler sampler,
                      std::uint64_t source_seed);

    std::optional<RequestEvent> next();
    std::uint64_t remaining() const { return n_requests_ - emitted_; }
    std::uint64_t total() const { return n_requests_; }
    const ZmSampler& sampler() const { return sampler_; }

    /// Materializes the whole stream (shared traces for policy sweeps).
    static std::vector<RequestEvent> materialize(WorkloadGenerator gen);

private:
    std::uint64_t n_requests_;
    std::uint64_t emitted_ = 0;
    std::vector<RouterId> sources_;
    ZmSampler sampler_;
    Rng source_rng_;
};

/// Trace file format: header "seq,source_router,object_id", one event per row.
std::string trace_to_csv(std::span<const RequestEvent> trace);
std::vector<RequestEvent> trace_from_csv(std::istream& in);
std::vector<RequestEvent> trace_from_csv_text(const std::string& text);

/// FNV-1a/64 over the canonical CSV bytes; identifies a workload across runs.
std::uint64_t trace_hash(std::span<const RequestEvent> trace);

struct PersistenceResult {
    bool persistent = false;
    /// First request index after which the object counts as persistent.
    std::uint64_t persistent_after = 0;
};

/// Deterministic persistence: the object is persistent after the first request
/// whose gap to the object's next request is < tau; transient when no gap ever
/// drops below tau (or the object is never requested). Trace must be sorted by
/// seq; "moment t" is the request index.
PersistenceResult classify_persistence(std::span<const RequestEvent> trace, ObjectId object,
                                       std::uint64_t tau);

} // namespace icnsim
