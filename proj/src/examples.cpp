namespace logchow {}
