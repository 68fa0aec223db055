#pragma once

#include <map>
#include <utility>

#include "mmi/modal.hpp"
#include "mmi/multiport.hpp"

namespace fixtures {

inline const mmi::WaveguideSpec& default_spec()
{
    static const mmi::WaveguideSpec spec;
    return spec;
}

// Numerically built N-port device of length q / (4N), default spec and layout.
inline const mmi::TransferMatrix& built(int ports, int q)
{
    static std::map<std::pair<int, int>, mmi::TransferMatrix> cache;
    const auto key = std::pair{ports, q};
    auto it = cache.find(key);
    if (it == cache.end()) {
        const auto& spec = default_spec();
        it = cache.emplace(key, mmi::build_transfer_matrix(spec, mmi::PortLayout(ports, spec.width()), q)).first;
    }
    return it->second;
}

} // namespace fixtures
