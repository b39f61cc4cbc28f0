#ifndef TCMKIT_VERSION_HPP
#define TCMKIT_VERSION_HPP

#define TCMKIT_VERSION "0.1.0"

#endif
