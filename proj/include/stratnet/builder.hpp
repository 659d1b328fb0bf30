#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stratnet/net.hpp"

namespace stratnet {

// Rules building sequentializable nets. Every result is renumbered (e0.., l0..).
// Unary rules keep the position of the conclusion they act on; binary rules put the
// new conclusion where the first consumed one was; bottom and weakening append.
Net daimon();
Net ax(const Formula& a);
Net one_rule();
Net mix(const Net& a, const Net& b);
Net cut_rule(const Net& a, std::size_t i, const Net& b, std::size_t j);
Net tensor_rule(const Net& a, std::size_t i, const Net& b, std::size_t j);
Net par_rule(const Net& a, std::size_t i, std::size_t j);
Net bottom_rule(const Net& a);
Net flat_rule(const Net& a, std::size_t i);
// with no indices a weakening on ?weakened is added
Net whynot_rule(const Net& a, const std::vector<std::size_t>& indices, std::optional<Formula> weakened = std::nullopt);
Net paragraph_rule(const Net& a, std::size_t i);
Net promotion(const Net& a, std::size_t principal);

struct RandomParams {
    int target_size = 12;
    double box_bias = 0.3;
    double paragraph_bias = 0.3;
    double exponential_bias = 0.3;
    double cut_bias = 0.0;
};

Net random_net(std::uint64_t seed, const RandomParams& params);
Formula random_formula(std::uint64_t seed, int size, const RandomParams& params);

// Small deterministic generator (splitmix64), independent of the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }
    double unit() { return (next() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

private:
    std::uint64_t state_;
};

}
