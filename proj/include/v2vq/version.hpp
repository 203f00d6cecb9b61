#pragma once

#define V2VQ_VERSION_MAJOR 0
#define V2VQ_VERSION_MINOR 1
#define V2VQ_VERSION_PATCH 0
#define V2VQ_VERSION_STRING "0.1.0"
