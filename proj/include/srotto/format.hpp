// format.hpp: Numeric formatting for CSV/JSON payloads

#pragma once

#include <cstdio>
#include <string>

namespace srotto {

// 12 significant digits; the precision at which reruns are compared.
inline std::string fmt_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Short form used in file names (e.g. 0.19, 0.03).
inline std::string fmt_short(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace srotto
