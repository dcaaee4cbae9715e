// qsl/qsl.hpp: umbrella header.

#pragma once

#include "qsl/apcheck.hpp"
#include "qsl/atoms.hpp"
#include "qsl/cfourier.hpp"
#include "qsl/error.hpp"
#include "qsl/presets.hpp"
#include "qsl/reconstruct.hpp"
#include "qsl/serialize.hpp"
#include "qsl/spectral.hpp"
#include "qsl/strip_zeros.hpp"
#include "qsl/wiener.hpp"

namespace qsl {
inline constexpr const char* kVersion = "0.1.0";
}
