#ifndef SUPERPOS_SUPERPOS_HPP
#define SUPERPOS_SUPERPOS_HPP

#include "rational.hpp"
#include "linalg.hpp"
#include "core.hpp"
#include "closed_path.hpp"
#include "represent.hpp"
#include "ridge.hpp"

#endif // SUPERPOS_SUPERPOS_HPP
