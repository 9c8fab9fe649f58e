#pragma once

// Every translation unit that talks HTTP includes httplib through here so
// the configuration macros stay identical across the library.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
