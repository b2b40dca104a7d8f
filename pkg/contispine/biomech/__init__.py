# contispine biomech module
