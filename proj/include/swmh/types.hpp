#pragma once

#include <cstdint>

namespace swmh {

using TermId = std::uint32_t;
using DocId = std::uint32_t;
using Freq = std::uint32_t;

} // namespace swmh
