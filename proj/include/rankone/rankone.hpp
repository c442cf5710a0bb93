// Convenience umbrella: the whole library in one include.
#pragma once

#include "json_io.hpp"
