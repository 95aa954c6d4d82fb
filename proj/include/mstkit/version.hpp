#pragma once

#define MSTKIT_VERSION_STRING "0.1.0"
