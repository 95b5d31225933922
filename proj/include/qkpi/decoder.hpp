#pragma once

#include <cstdint>
#include <vector>

#include "qkpi/noise.hpp"
#include "qkpi/surface.hpp"

namespace qkpi {

// Detector error model: per fault case the exact detector/observable
// signature (computed by frame propagation), plus the matching graph used by
// the decoder (faults decomposed into per-qubit, per-axis components, each
// flipping at most two same-sector detectors).
class DetectorModel {
  public:
    struct Signature {
        std::vector<uint32_t> detectors;
        uint32_t obs_mask = 0;
    };
    struct SiteRef {
        uint64_t stream_item;
        double prob;
        int nvariants;            // 3, 15, or 1
        uint32_t first_signature; // variants are contiguous
    };
    struct Edge {
        int u = -1, v = -1;  // v = -1: boundary
        double prob = 0;
        int weight = 1;
        uint32_t obs_mask = 0;
    };

    int num_detectors = 0;
    std::vector<SiteRef> sites;
    std::vector<Signature> signatures;
    std::vector<Edge> edges;

    // per shot: sample faults exactly as the frame sampler would and XOR their
    // signatures; returns defect list + raw observable bits
    void sample_shot(uint64_t master_seed, uint64_t shot, std::vector<uint32_t>& defects,
                     uint32_t& raw_obs, std::vector<uint8_t>& scratch) const;
};

DetectorModel build_detector_model(const AnnotatedCircuit& annotated, const NoiseModel& model);

// Weighted union-find (cluster growth + peeling) over the detector graph.
class UnionFindDecoder {
  public:
    explicit UnionFindDecoder(const DetectorModel& dem);

    // returns the observable correction mask for this defect set
    uint32_t decode(const std::vector<uint32_t>& defects) const;

  private:
    int n_;  // detectors; node n_ is the boundary
    std::vector<DetectorModel::Edge> edges_;
    std::vector<std::vector<int>> incident_;
};

struct DetectorRecords {
    uint64_t shots = 0;
    std::vector<std::vector<uint32_t>> defects;  // per shot
    std::vector<uint32_t> raw_obs;               // per shot
};

DetectorRecords sample_detectors(const DetectorModel& dem, uint64_t shots, uint64_t master_seed);

// decoded error count for observable bit 0
uint64_t decode_and_count(const DetectorModel& dem, const DetectorRecords& records);

// fused sampling + decoding (identical results, no record buffer). Shots are
// chunked over workers; every fault is keyed on (seed, shot, site), so the
// worker count changes wall time only.
uint64_t sample_and_count_errors(const DetectorModel& dem, uint64_t shots, uint64_t master_seed,
                                 int workers = 1);

}  // namespace qkpi
