#pragma once

// Soft exponential activation library: scalar kernels, a complex-capable
// feed-forward network with exact backpropagation through the activation
// parameter, analytic network constructions, and a gradient-descent trainer.

#include "activation.hpp"
#include "builders.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "network.hpp"
#include "serialize.hpp"
#include "trainer.hpp"
