#ifndef NSBOX_TEST_HELPERS_HPP
#define NSBOX_TEST_HELPERS_HPP

#include <cstdint>
#include <string>

#include "nsbox/io.hpp"

namespace nsbox::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(NSBOX_FIXTURES_DIR) + "/" + name;
}

inline Json load_fixture(const std::string& name) {
    return load_json(fixture_path(name));
}

inline Box load_box(const std::string& name) {
    return box_from_json(load_fixture(name));
}

inline VertexSet load_vertex_set(const std::string& name) {
    return vertex_set_from_json(load_fixture(name));
}

// Deterministic pseudo-random stream for property checks.
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

inline std::vector<PartyRelabeling> random_relabeling(Lcg& rng, const Scenario& s) {
    std::vector<PartyRelabeling> rs;
    for (std::size_t i = 0; i < s.num_parties(); ++i) {
        PartyRelabeling r = PartyRelabeling::identity(s.parties[i]);
        // Shuffle the input permutation, but only across inputs with equal
        // output cardinality so the scenario is preserved.
        for (std::size_t j = r.input_perm.size(); j-- > 1;) {
            const std::size_t k = rng.below(j + 1);
            if (s.parties[i][j] == s.parties[i][k])
                std::swap(r.input_perm[j], r.input_perm[k]);
        }
        for (auto& perm : r.output_perms)
            for (std::size_t a = perm.size(); a-- > 1;)
                std::swap(perm[a], perm[rng.below(a + 1)]);
        rs.push_back(std::move(r));
    }
    return rs;
}

inline std::vector<PartyRelabeling> inverse_relabeling(
    const std::vector<PartyRelabeling>& rs, const Scenario& s) {
    std::vector<PartyRelabeling> inv(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        inv[i].input_perm.resize(rs[i].input_perm.size());
        inv[i].output_perms.resize(rs[i].output_perms.size());
        for (std::size_t j = 0; j < rs[i].input_perm.size(); ++j) {
            const int nj = rs[i].input_perm[j];
            inv[i].input_perm[nj] = static_cast<int>(j);
            std::vector<int> back(s.parties[i][j]);
            for (std::size_t a = 0; a < back.size(); ++a)
                back[rs[i].output_perms[j][a]] = static_cast<int>(a);
            inv[i].output_perms[nj] = std::move(back);
        }
    }
    return inv;
}

}  // namespace nsbox::testing

#endif
