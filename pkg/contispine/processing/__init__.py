# contispine processing module
