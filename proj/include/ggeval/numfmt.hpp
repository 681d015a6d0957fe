#pragma once

#include <charconv>
#include <cstdio>
#include <string>

#include "ggeval/error.hpp"

namespace ggeval {

// Locale-independent double formatting via std::to_chars (shortest
// round-trip form). All persisted numbers go through here so that reruns
// are byte-identical and unaffected by the process locale.
inline std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw NumericError("fmt_double: conversion failed");
    return std::string(buf, ptr);
}

// Fixed-precision form, used for plot coordinates.
inline std::string fmt_fixed(double v, int precision) {
    char buf[512];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::fixed, precision);
    if (ec != std::errc())
        throw NumericError("fmt_fixed: conversion failed");
    return std::string(buf, ptr);
}

}  // namespace ggeval
