#ifndef CRSENSE_VERSION_HPP
#define CRSENSE_VERSION_HPP

namespace crsense {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
