#pragma once

#include <string>

#include "netid/data.hpp"
#include "netid/gf2.hpp"
#include "netid/linalg.hpp"
#include "netid/network.hpp"

namespace fixtures {

inline const std::string data_dir = NETID_TEST_DATA;

/// Reduced incidence of the four-node example network.
inline netid::Matrix a_n()
{
    netid::Matrix a(4, 6);
    a << 1, 1, -1, 0, 0, 0,
         0, 0, 1, -1, 0, 0,
         0, 0, 0, 1, -1, -1,
         0, -1, 0, 0, 0, 1;
    return a;
}

/// Incidence of the network reconstructed from the example data.
inline netid::Matrix a_est()
{
    netid::Matrix a(4, 6);
    a << 1, 0, 0, 0, -1, 0,
         0, 1, 0, 0, 0, -1,
         0, 0, -1, 0, 1, 1,
         0, 0, 1, -1, 0, 0;
    return a;
}

inline netid::Matrix c_f()
{
    netid::Matrix c(4, 6);
    c << 1, 0, 0, 0, -1, 0,
         0, 1, 0, 0, 0, -1,
         0, 0, 1, 0, -1, -1,
         0, 0, 0, 1, -1, -1;
    return c;
}

/// Noisy cut-set estimate before rounding.
inline netid::Matrix c_f_hat()
{
    netid::Matrix c(4, 6);
    c << 1, 0, 0, 0, -0.995, -0.005,
         0, 1, 0, 0, -0.001, -0.999,
         0, 0, 1, 0, -1.003, -0.999,
         0, 0, 0, 1, -1.011, -0.992;
    return c;
}

/// PCA constraint estimate from noisy data, three decimals.
inline netid::Matrix a_r_hat_3dp()
{
    netid::Matrix a(4, 6);
    a << 0.099, 0.107, 0.612, -0.773, 0.068, 0.047,
         -0.318, 0.213, -0.315, -0.173, 0.806, 0.275,
         -0.748, -0.253, 0.432, 0.199, 0.110, -0.372,
         -0.045, -0.737, 0.077, -0.009, -0.023, 0.669;
    return a;
}

inline netid::BinaryMatrix c_u()
{
    return netid::BinaryMatrix::from_rows({{1, 0, 0, 0, 1, 0},
                                           {0, 1, 0, 0, 0, 1},
                                           {0, 0, 1, 0, 1, 1},
                                           {0, 0, 0, 1, 1, 1}});
}

inline netid::BinaryMatrix a_u1()
{
    return netid::BinaryMatrix::from_rows({{1, 0, 0, 0, 1, 0},
                                           {0, 1, 0, 0, 0, 1},
                                           {0, 0, 1, 0, 1, 1},
                                           {0, 0, 1, 1, 0, 0}});
}

inline netid::BinaryMatrix fano()
{
    return netid::BinaryMatrix::from_rows({{1, 0, 0, 1, 1, 0, 1},
                                           {0, 1, 0, 1, 0, 1, 1},
                                           {0, 0, 1, 0, 1, 1, 1}});
}

inline netid::Matrix steady_states()
{
    netid::Matrix x(6, 7);
    x << 1, 1, 1, 2, 2, 2, 3,
         1, 2, 3, 1, 2, 3, 1,
         2, 3, 4, 3, 4, 5, 4,
         2, 3, 4, 3, 4, 5, 4,
         1, 1, 1, 2, 2, 2, 3,
         1, 2, 3, 1, 2, 3, 1;
    return x;
}

inline netid::FlowNetwork four_node() { return netid::make_network(a_n()); }
inline netid::FlowNetwork four_node_estimate() { return netid::make_network(a_est()); }

} // namespace fixtures
