placeholder
