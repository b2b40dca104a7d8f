# contispine control module
